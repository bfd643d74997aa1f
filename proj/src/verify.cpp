#include "splitcurve/verify.hpp"

#include <functional>

#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"
#include "splitcurve/parallel.hpp"
#include "splitcurve/spin.hpp"

namespace splitcurve {

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back({{"statement", f.statement}, {"graph", f.graph}, {"detail", f.detail}});
  return {{"suite", suite},
          {"genus", genus},
          {"graphs_checked", graphs_checked},
          {"passed", passed()},
          {"failures", fails},
          {"summary", summary}};
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"3.2.1", "3.2.2", "3.3.1", "3.3.2", "3.4.1", "degree-identity"};
  return ids;
}

namespace {

std::string set_string(const std::set<int>& s) {
  std::string out = "{";
  for (int x : s) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

// Runs `check` on every graph in parallel; failures are concatenated in
// enumeration order.
VerifyReport for_each_graph(const std::string& suite, int genus,
                            const std::function<void(const StableGraph&, std::vector<VerifyFailure>&)>& check) {
  VerifyReport rep;
  rep.suite = suite;
  rep.genus = genus;
  const auto graphs = enumerate_stable_graphs(genus);
  rep.graphs_checked = graphs.size();
  std::vector<std::vector<VerifyFailure>> per(graphs.size());
  parallel_for(graphs.size(), [&](std::size_t i) { check(graphs[i], per[i]); });
  for (auto& f : per) rep.failures.insert(rep.failures.end(), f.begin(), f.end());
  return rep;
}

}  // namespace

VerifyReport verify_cyclic_complements(int genus) {
  return for_each_graph("3.2.1", genus, [](const StableGraph& g, std::vector<VerifyFailure>& out) {
    const int top = arithmetic_genus(g) - g.genus_sum();
    const auto cycles = cyclic_sets(g);
    // Families of pairwise disjoint cyclic sets, grown in index order.
    std::function<void(std::size_t, std::uint64_t, int)> grow = [&](std::size_t from, std::uint64_t used, int n) {
      if (n > 0) {
        const NodeSet sigma = NodeSet(g.edge_count(), used).complement();
        if (!is_admissible(g, sigma))
          out.push_back({"3.2.1", g.to_json(), "complement of disjoint cyclic sets not admissible"});
        const int e = exponent(g, sigma);
        if ((n == 1 && e != top - 1) || e > top - n)
          out.push_back({"3.2.1", g.to_json(),
                         "exponent " + std::to_string(e) + " for " + std::to_string(n) + " cyclic sets"});
      }
      for (std::size_t k = from; k < cycles.size(); ++k)
        if ((cycles[k].mask() & used) == 0) grow(k + 1, used | cycles[k].mask(), n + 1);
    };
    grow(0, 0, 0);
  });
}

VerifyReport verify_top_exponents(int genus) {
  return for_each_graph("3.2.2", genus, [](const StableGraph& g, std::vector<VerifyFailure>& out) {
    const int top = arithmetic_genus(g) - g.genus_sum();
    const ExponentSet e = exponent_set(g);
    if (!is_compact_type(g) && !(e.contains(top) && e.contains(top - 1)))
      out.push_back({"3.2.2(a)", g.to_json(), "E = " + set_string(e.values)});
    for (const NodeSet& s : admissible_sets(g))
      if (exponent(g, s) == top && !s.is_full())
        out.push_back({"3.2.2(b)", g.to_json(), "maximal exponent on a proper node set"});
    for (int i = 0; i < g.edge_count(); ++i) {
      if (!g.edges()[i].is_loop()) continue;
      const StableGraph z = normalize_at(g, NodeSet(g, {i}));
      const bool z_compact = is_compact_type(z);
      if (!(e.contains(top - 2) || (z_compact && e.values == std::set<int>{0, 1})))
        out.push_back({"3.2.2(c)", g.to_json(), "internal node " + std::to_string(i) + ", E = " + set_string(e.values)});
    }
  });
}

VerifyReport verify_compact_type(int genus) {
  auto rep = for_each_graph("3.3.1", genus, [](const StableGraph& g, std::vector<VerifyFailure>& out) {
    const bool compact = is_compact_type(g);
    const ExponentSet e = exponent_set(g);
    if (compact != (e.values == std::set<int>{0}))
      out.push_back({"3.3.1", g.to_json(), "compact=" + std::to_string(compact) + ", E = " + set_string(e.values)});
    if (compact && multiplicity_set(g).values != std::set<std::int64_t>{1})
      out.push_back({"3.3.1", g.to_json(), "compact type but spin scheme not reduced"});
  });
  return rep;
}

StableGraph destabilize(const StableGraph& g, std::mt19937_64& rng, int steps) {
  std::vector<int> genera = g.genera();
  std::vector<Edge> edges = g.edges();
  for (int s = 0; s < steps; ++s) {
    const int w = static_cast<int>(genera.size());
    const bool tail = edges.empty() || std::uniform_int_distribution<int>(0, 2)(rng) == 0;
    if (tail) {
      const int v = std::uniform_int_distribution<int>(0, w - 1)(rng);
      genera.push_back(0);
      edges.push_back({v, w});
    } else {
      const int i = std::uniform_int_distribution<int>(0, static_cast<int>(edges.size()) - 1)(rng);
      const Edge e = edges[i];
      genera.push_back(0);
      edges[i] = {e.u, w};
      edges.push_back({e.v, w});
    }
  }
  return StableGraph::make_relaxed(std::move(genera), std::move(edges));
}

VerifyReport verify_stabilization(int genus, int samples, std::uint64_t seed) {
  VerifyReport rep;
  rep.suite = "3.3.2";
  rep.genus = genus;
  const auto graphs = enumerate_stable_graphs(genus);
  rep.graphs_checked = graphs.size();
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    const auto& g = graphs[std::uniform_int_distribution<std::size_t>(0, graphs.size() - 1)(rng)];
    const int steps = std::uniform_int_distribution<int>(1, 4)(rng);
    const StableGraph y = destabilize(g, rng, steps);
    const StableGraph x = stabilize(y);
    if (!is_isomorphic(x, g))
      rep.failures.push_back({"3.3.2", y.to_json(), "stable model is not the original graph"});
    if (exponent_set(x) != exponent_set(y))
      rep.failures.push_back({"3.3.2", y.to_json(), "exponent set changed under stabilization"});
  }
  rep.summary["samples"] = samples;
  rep.summary["seed"] = seed;
  return rep;
}

VerifyReport verify_classification(int genus) {
  VerifyReport rep;
  rep.suite = "3.4.1";
  rep.genus = genus;
  const TheoremReport t = verify_split_classification(genus);
  rep.graphs_checked = t.graphs_checked;
  nlohmann::json survivors = nlohmann::json::array();
  for (std::size_t i = 0; i < t.survivors.size(); ++i)
    survivors.push_back({{"class", to_string(t.survivor_classes[i])},
                         {"canonical_key", canonical_form(t.survivors[i]).to_string()},
                         {"graph", t.survivors[i].to_json()}});
  rep.summary["survivors"] = survivors;
  if (!t.holds) {
    for (std::size_t i = 0; i < t.survivors.size(); ++i)
      if (t.survivor_classes[i] == CurveClass::other)
        rep.failures.push_back({"3.4.1", t.survivors[i].to_json(), "non-split graph satisfies the predicate"});
    if (rep.failures.empty())
      rep.failures.push_back({"3.4.1", nlohmann::json(), "expected survivor class missing"});
  }
  return rep;
}

VerifyReport verify_degree_identity(int genus) {
  const std::int64_t want_odd = odd_theta_count(genus);
  const std::int64_t want_total = pow2(2 * genus);
  auto rep = for_each_graph("degree-identity", genus, [&](const StableGraph& g, std::vector<VerifyFailure>& out) {
    const DegreeSums d = degree_sums(g);
    if (d.odd != want_odd || d.total != want_total)
      out.push_back({"degree-identity", g.to_json(),
                     "odd sum " + std::to_string(d.odd) + ", total sum " + std::to_string(d.total)});
  });
  rep.summary["expected_odd"] = want_odd;
  rep.summary["expected_total"] = want_total;
  return rep;
}

VerifyReport run_suite(const std::string& id, int genus, std::uint64_t seed) {
  if (id == "3.2.1") return verify_cyclic_complements(genus);
  if (id == "3.2.2") return verify_top_exponents(genus);
  if (id == "3.3.1") return verify_compact_type(genus);
  if (id == "3.3.2") return verify_stabilization(genus, 100, seed);
  if (id == "3.4.1") return verify_classification(genus);
  if (id == "degree-identity") return verify_degree_identity(genus);
  throw InputError("unknown verification suite: " + id);
}

}  // namespace splitcurve

#include "splitcurve/spin.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"

namespace splitcurve {

bool is_admissible(const StableGraph& g, const NodeSet& sigma) {
  sigma.check_against(g);
  std::vector<int> parity(g.vertex_count(), 0);
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (e.is_loop() || sigma.contains(i)) continue;
    parity[e.u] ^= 1;
    parity[e.v] ^= 1;
  }
  return std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; });
}

namespace {

// Basis of the cycle space: one vector per loop, one fundamental cycle per
// non-tree edge of a spanning forest.
std::vector<std::uint64_t> cycle_basis(const StableGraph& g) {
  const int n = g.vertex_count();
  const auto& edges = g.edges();
  std::vector<std::vector<std::pair<int, int>>> tree_adj(n);  // (neighbor, edge)
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };

  std::vector<int> non_tree;
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = edges[i];
    if (e.is_loop()) {
      non_tree.push_back(i);
      continue;
    }
    const int a = find(e.u), b = find(e.v);
    if (a == b) {
      non_tree.push_back(i);
    } else {
      comp[a] = b;
      tree_adj[e.u].emplace_back(e.v, i);
      tree_adj[e.v].emplace_back(e.u, i);
    }
  }

  // Path between two vertices inside the forest, as an edge mask.
  auto tree_path = [&](int from, int to) {
    std::vector<int> via(n, -1), prev(n, -1);
    std::vector<int> stack{from};
    std::vector<char> seen(n, 0);
    seen[from] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (auto [y, e] : tree_adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        prev[y] = x;
        via[y] = e;
        stack.push_back(y);
      }
    }
    std::uint64_t mask = 0;
    for (int x = to; x != from; x = prev[x]) mask |= std::uint64_t{1} << via[x];
    return mask;
  };

  std::vector<std::uint64_t> basis;
  for (int i : non_tree) {
    const Edge& e = edges[i];
    std::uint64_t m = std::uint64_t{1} << i;
    if (!e.is_loop()) m |= tree_path(e.u, e.v);
    basis.push_back(m);
  }
  return basis;
}

}  // namespace

std::vector<NodeSet> admissible_sets(const StableGraph& g) {
  const auto basis = cycle_basis(g);
  if (basis.size() > 30) throw InputError("admissible_sets: first Betti number too large");
  const NodeSet full = NodeSet::all(g);
  std::vector<NodeSet> out;
  out.reserve(std::size_t{1} << basis.size());
  for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << basis.size()); ++combo) {
    std::uint64_t even = 0;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if ((combo >> k) & 1U) even ^= basis[k];
    out.emplace_back(g.edge_count(), full.mask() & ~even);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeSet> admissible_sets_bruteforce(const StableGraph& g) {
  if (g.edge_count() > 20) throw InputError("admissible_sets_bruteforce: too many edges");
  std::vector<NodeSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.edge_count()); ++m) {
    NodeSet s(g.edge_count(), m);
    if (is_admissible(g, s)) out.push_back(s);
  }
  return out;
}

std::vector<NodeSet> cyclic_sets(const StableGraph& g) {
  std::vector<NodeSet> out;
  for (const NodeSet& adm : admissible_sets(g)) {
    const NodeSet c = adm.complement();
    if (c.size() == 0) continue;
    std::vector<int> deg(g.vertex_count(), 0);
    std::uint64_t touched = 0;
    for (int e : c.members()) {
      ++deg[g.edges()[e].u];
      ++deg[g.edges()[e].v];
      touched |= std::uint64_t{1} << g.edges()[e].u;
      touched |= std::uint64_t{1} << g.edges()[e].v;
    }
    bool polygon = true;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (((touched >> v) & 1U) && deg[v] != 2) polygon = false;
    if (!polygon) continue;
    // Connected: the kept edges form one component among touched vertices.
    const int comps = connected_components_without(g, c.complement().mask());
    const int untouched = g.vertex_count() - std::popcount(touched);
    if (comps - untouched == 1) out.push_back(c);
  }
  return out;
}

int exponent(const StableGraph& g, const NodeSet& sigma) {
  sigma.check_against(g);
  return sigma.size() - connected_components_without(g, sigma.mask()) + connected_components(g);
}

ExponentSet exponent_set(const StableGraph& g) {
  ExponentSet e;
  for (const NodeSet& s : admissible_sets(g)) e.values.insert(exponent(g, s));
  return e;
}

SpinSupportReport spin_counts(const StableGraph& g, const NodeSet& sigma) {
  if (!is_admissible(g, sigma)) throw InputError("spin_counts: node set is not admissible");
  SpinSupportReport r;
  r.sigma = sigma;
  r.exponent = exponent(g, sigma);
  r.multiplicity = pow2(r.exponent);

  const StableGraph z = normalize_at(g, sigma);
  r.n_total = pow2(2 * g.genus_sum() + betti_1(z));
  if (!sigma.is_full()) {
    r.n_odd = r.n_total / 2;
  } else {
    // Odd iff an odd number of components carry an odd theta-characteristic;
    // a genus-h curve has 2^(h-1)(2^h -/+ 1) odd/even ones.
    std::int64_t all = 1, signed_sum = 1;
    for (int h : g.genera()) {
      all *= pow2(2 * h);
      signed_sum *= pow2(h);  // even - odd = 2^h
    }
    r.n_odd = (all - signed_sum) / 2;
  }
  return r;
}

MultiplicitySet multiplicity_set(const StableGraph& g) {
  const ExponentSet e = exponent_set(g);
  const int top = arithmetic_genus(g) - g.genus_sum();
  const bool all_rational = g.genus_sum() == 0;
  MultiplicitySet m;
  for (int n : e.values)
    if (!(all_rational && n == top)) m.values.insert(pow2(n));
  return m;
}

DegreeSums degree_sums(const StableGraph& g) {
  DegreeSums d;
  for (const NodeSet& s : admissible_sets(g)) {
    const SpinSupportReport r = spin_counts(g, s);
    d.odd += r.n_odd * r.multiplicity;
    d.total += r.n_total * r.multiplicity;
  }
  return d;
}

SHatStats s_hat_stats(int genus) {
  if (genus < 3) throw InputError("s_hat_stats: genus must be at least 3");
  const std::int64_t a = 4 * binomial(genus + 1, genus - 3);
  const std::int64_t c = binomial(genus + 1, genus - 1);
  SHatStats s;
  s.components = a + c;
  s.length = pow2(genus - 3) * a + pow2(genus - 1) * c;
  s.multiplicities.values = {pow2(genus - 3), pow2(genus - 1)};
  return s;
}

std::map<int, std::int64_t> split_theta_counts(int genus) {
  if (genus < 3) throw InputError("split_theta_counts: genus must be at least 3");
  std::map<int, std::int64_t> t;
  for (int i = 0; i <= genus - 1; ++i)
    t[i] = (i - genus) % 2 == 0 ? 0 : binomial(genus + 1, i) * pow2(genus - i - 1);
  return t;
}

ExponentSet split_exponent_set_closed_form(int genus) {
  ExponentSet e;
  for (int n = (genus % 2 == 0 ? 1 : 0); n <= genus - 1; n += 2) e.values.insert(n);
  e.values.insert(genus);
  return e;
}

std::string to_string(CurveClass c) {
  switch (c) {
    case CurveClass::split: return "split";
    case CurveClass::polygonal_g3: return "polygonal";
    case CurveClass::other: return "other";
  }
  return "other";
}

bool classification_predicate(const StableGraph& g) {
  const int genus = arithmetic_genus(g);
  const ExponentSet e = exponent_set(g);
  return e.contains(genus) && !e.contains(genus - 2);
}

CurveClass classify(const StableGraph& g) {
  const int genus = arithmetic_genus(g);
  if (is_split(g, genus)) return CurveClass::split;
  if (genus == 3 && is_polygonal_g3(g)) return CurveClass::polygonal_g3;
  return CurveClass::other;
}

TheoremReport verify_split_classification(int genus) {
  TheoremReport rep;
  rep.genus = genus;
  const auto graphs = enumerate_stable_graphs(genus);
  rep.graphs_checked = graphs.size();
  for (const StableGraph& g : graphs) {
    if (!classification_predicate(g)) continue;
    rep.survivors.push_back(g);
    rep.survivor_classes.push_back(classify(g));
  }
  std::multiset<CurveClass> got(rep.survivor_classes.begin(), rep.survivor_classes.end());
  std::multiset<CurveClass> want{CurveClass::split};
  if (genus == 3) want.insert(CurveClass::polygonal_g3);
  rep.holds = got == want;
  return rep;
}

// A surjection with a(l) >= l exists iff every l has some m >= l and the
// bipartite graph {(l, m) : l <= m} has a matching saturating M.
bool dominates(const std::set<int>& L, const std::set<int>& M) {
  if (M.empty()) return L.empty();
  if (L.size() < M.size()) return false;
  if (*L.rbegin() > *M.rbegin()) return false;

  const std::vector<int> ls(L.begin(), L.end());
  const std::vector<int> ms(M.begin(), M.end());
  std::vector<int> match_of_l(ls.size(), -1);

  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t mi, std::vector<char>& seen) {
    for (std::size_t li = 0; li < ls.size(); ++li) {
      if (ls[li] > ms[mi] || seen[li]) continue;
      seen[li] = 1;
      if (match_of_l[li] < 0 || augment(static_cast<std::size_t>(match_of_l[li]), seen)) {
        match_of_l[li] = static_cast<int>(mi);
        return true;
      }
    }
    return false;
  };
  for (std::size_t mi = 0; mi < ms.size(); ++mi) {
    std::vector<char> seen(ls.size(), 0);
    if (!augment(mi, seen)) return false;
  }
  return true;
}

bool dominates_bruteforce(const std::set<int>& L, const std::set<int>& M) {
  const std::vector<int> ls(L.begin(), L.end());
  const std::vector<int> ms(M.begin(), M.end());
  if (ls.empty()) return ms.empty();
  if (ms.empty()) return false;
  if (ls.size() > 8 || ms.size() > 8) throw InputError("dominates_bruteforce: sets too large");
  std::vector<std::size_t> image(ls.size(), 0);
  while (true) {
    bool ok = true;
    std::vector<char> hit(ms.size(), 0);
    for (std::size_t i = 0; i < ls.size() && ok; ++i) {
      ok = ms[image[i]] >= ls[i];
      hit[image[i]] = 1;
    }
    if (ok && std::all_of(hit.begin(), hit.end(), [](char c) { return c; })) return true;
    std::size_t k = 0;
    while (k < image.size() && ++image[k] == ms.size()) image[k++] = 0;
    if (k == image.size()) return false;
  }
}

}  // namespace splitcurve

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "splitcurve/error.hpp"
#include "splitcurve/stable_graph.hpp"

using namespace splitcurve;

namespace {

StableGraph theta_graph_11() { return StableGraph::make({1, 1}, {{0, 1}, {0, 1}, {0, 1}}); }

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(StableGraph::make({0}, {{0, 0}}), InputError);             // genus 1
  CHECK_THROWS_AS(StableGraph::make({0, 2}, {{0, 1}}), InputError);          // unstable rational vertex
  CHECK_THROWS_AS(StableGraph::make({1, 1}, {}), InputError);                // disconnected
  CHECK_THROWS_AS(StableGraph::make({1, 1}, {{0, 2}}), InputError);          // bad index
  CHECK_NOTHROW(StableGraph::make_relaxed({0, 0, 5}, {{0, 1}}));
  CHECK(arithmetic_genus(split_graph(5)) == 5);
  CHECK(arithmetic_genus(polygonal_graph()) == 3);
}

TEST_CASE("json round trip and malformed input") {
  const StableGraph g = theta_graph_11();
  CHECK(StableGraph::from_json(g.to_json()) == g);
  CHECK_THROWS_AS(StableGraph::from_json(nlohmann::json::parse(R"({"edges":[]})")), InputError);
  CHECK_THROWS_AS(StableGraph::from_json(nlohmann::json::parse(R"({"genus_labels":[2],"edges":[[0]]})")), InputError);
  CHECK_THROWS_AS(StableGraph::from_json(nlohmann::json::parse(R"({"genus_labels":"x","edges":[]})")), InputError);
}

TEST_CASE("canonical form examples") {
  const StableGraph s = split_graph(3);
  CHECK(canonical_form(s) == canonical_form(relabel(s, {1, 0})));
  CHECK(canonical_form(s) != canonical_form(polygonal_graph()));
  const StableGraph a = StableGraph::make({1, 1}, {{0, 1}, {0, 1}, {0, 1}});
  const StableGraph b = StableGraph::make({1, 1}, {{1, 0}, {0, 1}, {1, 0}});
  CHECK(is_isomorphic(a, b));
  CHECK_FALSE(is_isomorphic(StableGraph::make({2}, {{0, 0}}), StableGraph::make({1, 1}, {{0, 1}, {0, 1}})));
}

TEST_CASE("canonical form agrees with permutation brute force (g = 3, 4)") {
  std::mt19937_64 rng(11);
  for (int genus : {3, 4}) {
    const auto graphs = enumerate_stable_graphs(genus);
    std::set<std::vector<int>> brute;
    for (const auto& g : graphs) {
      brute.insert(oracle::brute_key(g));
      const StableGraph r = relabel(g, random_perm(g.vertex_count(), rng));
      CHECK(canonical_form(r) == canonical_form(g));
      // Edge order does not matter either.
      std::vector<Edge> es = r.edges();
      std::shuffle(es.begin(), es.end(), rng);
      CHECK(canonical_form(StableGraph::make(r.genera(), es)) == canonical_form(g));
    }
    // Duplicate-free: distinct brute-force classes, one per returned graph.
    CHECK(brute.size() == graphs.size());
  }
}

TEST_CASE("enumeration matches brute-force filtering of all multigraphs") {
  for (int genus : {2, 3}) {
    std::set<std::vector<int>> mine;
    for (const auto& g : enumerate_stable_graphs(genus)) mine.insert(oracle::brute_key(g));
    CHECK(mine == oracle::brute_stable_classes(genus));
  }
  CHECK(enumerate_stable_graphs(2).size() == 7);
}

TEST_CASE("enumeration counts and postconditions") {
  // Published counts of genus-g stable graphs without markings.
  const std::map<int, std::size_t> known{{2, 7}, {3, 42}, {4, 379}, {5, 4555}};
  for (auto [genus, count] : known) {
    const auto graphs = enumerate_stable_graphs(genus);
    CHECK(graphs.size() == count);
    int splits = 0, polygons = 0;
    for (const auto& g : graphs) {
      CHECK(arithmetic_genus(g) == genus);
      CHECK(connected_components(g) == 1);
      for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.is_stable_vertex(v));
      CHECK(g.vertex_count() <= 2 * genus - 2);
      CHECK(g.edge_count() <= 3 * genus - 3);
      splits += is_split(g, genus);
      polygons += is_polygonal_g3(g);
    }
    CHECK(splits == 1);
    CHECK(polygons == (genus == 3 ? 1 : 0));
  }
  CHECK_THROWS_AS(enumerate_stable_graphs(1), InputError);
  CHECK_THROWS_AS(enumerate_stable_graphs(kMaxEnumerableGenus + 1), InputError);
}

TEST_CASE("canonical key is idempotent") {
  for (const auto& g : enumerate_stable_graphs(4)) {
    const CanonicalKey k = canonical_form(g);
    // Rebuild a graph from its key (column-major upper triangle) and re-canonicalize.
    const int n = k.code[0];
    std::vector<int> genera(k.code.begin() + 1, k.code.begin() + 1 + n);
    std::vector<Edge> edges;
    std::size_t pos = 1 + n;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= j; ++i, ++pos)
        for (int m = 0; m < k.code[pos]; ++m) edges.push_back({i, j});
    CHECK(canonical_form(StableGraph::make(genera, edges)) == k);
  }
}

TEST_CASE("normalization properties") {
  std::mt19937_64 rng(5);
  for (const auto& g : enumerate_stable_graphs(4)) {
    const StableGraph z = normalize_at(g, NodeSet::empty(g));
    CHECK(z.genera() == g.genera());
    CHECK(z.edge_count() == g.edge_count());
    const int m = g.edge_count();
    const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << m) - 1)(rng);
    const std::uint64_t b = a | std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << m) - 1)(rng);
    const int ca = connected_components(normalize_at(g, NodeSet(m, a)));
    const int cb = connected_components(normalize_at(g, NodeSet(m, b)));
    CHECK(ca <= cb);
    CHECK(ca == connected_components_without(g, a));
  }
}

TEST_CASE("compact type and node kinds") {
  const StableGraph c = StableGraph::make({1, 2}, {{0, 1}});
  CHECK(is_compact_type(c));
  CHECK(classify_node(c, 0) == NodeKind::separating);
  const StableGraph l = StableGraph::make({2}, {{0, 0}});
  CHECK_FALSE(is_compact_type(l));
  CHECK(classify_node(l, 0) == NodeKind::internal);
  CHECK(classify_node(split_graph(3), 0) == NodeKind::nonseparating_external);
}

TEST_CASE("stabilize contracts tails and bridges") {
  const StableGraph g = split_graph(3);
  for (int k = 0; k < 50; ++k) {
    const StableGraph y = [&] {
      std::vector<int> genera = g.genera();
      std::vector<Edge> edges = g.edges();
      const int w = static_cast<int>(genera.size());
      genera.push_back(0);
      const Edge e = edges[k % edges.size()];
      edges[k % edges.size()] = {e.u, w};
      edges.push_back({w, e.v});
      genera.push_back(0);
      edges.push_back({w, w + 1});
      return StableGraph::make_relaxed(genera, edges);
    }();
    const StableGraph x = stabilize(y);
    CHECK(arithmetic_genus(x) == 3);
    CHECK(is_isomorphic(x, g));
  }
}

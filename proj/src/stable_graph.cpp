#include "splitcurve/stable_graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "splitcurve/error.hpp"

namespace splitcurve {

namespace {

void check_indices(const std::vector<int>& genera, const std::vector<Edge>& edges) {
  const int n = static_cast<int>(genera.size());
  if (n == 0) throw InputError("graph has no vertices");
  if (static_cast<int>(edges.size()) > StableGraph::kMaxEdges)
    throw InputError("graph has more than 64 edges");
  for (int gv : genera)
    if (gv < 0) throw InputError("negative geometric genus");
  for (const Edge& e : edges)
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InputError("edge endpoint out of range");
}

struct UnionFind {
  std::vector<int> parent;
  int sets;

  explicit UnionFind(int n) : parent(n), sets(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    --sets;
    return true;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// StableGraph

StableGraph StableGraph::make_relaxed(std::vector<int> genera, std::vector<Edge> edges) {
  check_indices(genera, edges);
  for (Edge& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  return StableGraph(std::move(genera), std::move(edges));
}

StableGraph StableGraph::make(std::vector<int> genera, std::vector<Edge> edges) {
  StableGraph g = make_relaxed(std::move(genera), std::move(edges));
  if (connected_components(g) != 1) throw InputError("stable graph must be connected");
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!g.is_stable_vertex(v))
      throw InputError("vertex " + std::to_string(v) + " violates 2g-2+deg > 0");
  if (arithmetic_genus(g) < 2) throw InputError("arithmetic genus must be at least 2");
  return g;
}

int StableGraph::degree(int v) const {
  int d = 0;
  for (const Edge& e : edges_) d += (e.u == v) + (e.v == v);
  return d;
}

int StableGraph::loop_count(int v) const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.u == v && e.v == v; }));
}

int StableGraph::genus_sum() const { return std::accumulate(genera_.begin(), genera_.end(), 0); }

nlohmann::json StableGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : edges_) edges.push_back({e.u, e.v});
  return {{"genus_labels", genera_}, {"edges", edges}};
}

StableGraph StableGraph::from_json(const nlohmann::json& j, bool relaxed) {
  try {
    auto genera = j.at("genus_labels").get<std::vector<int>>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair [u, v]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return relaxed ? make_relaxed(std::move(genera), std::move(edges))
                   : make(std::move(genera), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed graph JSON: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// NodeSet

NodeSet::NodeSet(int edge_count, std::uint64_t mask) : edge_count_(edge_count), mask_(mask) {
  if (edge_count < 0 || edge_count > StableGraph::kMaxEdges) throw InputError("node set: bad edge count");
  if (edge_count < 64 && (mask >> edge_count) != 0) throw InputError("node set: edge index out of range");
}

NodeSet::NodeSet(const StableGraph& parent, const std::vector<int>& members)
    : edge_count_(parent.edge_count()) {
  for (int e : members) {
    if (e < 0 || e >= edge_count_) throw InputError("node set: edge index " + std::to_string(e) + " out of range");
    mask_ |= std::uint64_t{1} << e;
  }
}

NodeSet NodeSet::all(const StableGraph& g) {
  const int n = g.edge_count();
  return NodeSet(n, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

int NodeSet::size() const { return std::popcount(mask_); }

bool NodeSet::is_full() const { return size() == edge_count_; }

std::vector<int> NodeSet::members() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count_; ++e)
    if (contains(e)) out.push_back(e);
  return out;
}

NodeSet NodeSet::complement() const {
  const std::uint64_t full = edge_count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edge_count_) - 1;
  return NodeSet(edge_count_, full & ~mask_);
}

NodeSet NodeSet::with(int e) const {
  if (e < 0 || e >= edge_count_) throw InputError("node set: edge index out of range");
  return NodeSet(edge_count_, mask_ | (std::uint64_t{1} << e));
}

void NodeSet::check_against(const StableGraph& g) const {
  if (edge_count_ != g.edge_count()) throw InputError("node set does not belong to this graph");
}

// ---------------------------------------------------------------------------
// Basic invariants

int connected_components_without(const StableGraph& g, std::uint64_t removed) {
  UnionFind uf(g.vertex_count());
  const auto& edges = g.edges();
  for (int i = 0; i < g.edge_count(); ++i)
    if (!((removed >> i) & 1U)) uf.unite(edges[i].u, edges[i].v);
  return uf.sets;
}

int connected_components(const StableGraph& g) { return connected_components_without(g, 0); }

int betti_1(const StableGraph& g) {
  return g.edge_count() - g.vertex_count() + connected_components(g);
}

int arithmetic_genus(const StableGraph& g) { return g.genus_sum() + betti_1(g); }

StableGraph normalize_at(const StableGraph& g, const NodeSet& sigma) {
  sigma.check_against(g);
  std::vector<Edge> kept;
  for (int i = 0; i < g.edge_count(); ++i)
    if (!sigma.contains(i)) kept.push_back(g.edges()[i]);
  return StableGraph::make_relaxed(g.genera(), std::move(kept));
}

NodeKind classify_node(const StableGraph& g, int edge) {
  if (edge < 0 || edge >= g.edge_count()) throw InputError("edge index out of range");
  if (g.edges()[edge].is_loop()) return NodeKind::internal;
  const int before = connected_components(g);
  const int after = connected_components_without(g, std::uint64_t{1} << edge);
  return after > before ? NodeKind::separating : NodeKind::nonseparating_external;
}

bool is_compact_type(const StableGraph& g) {
  for (int e = 0; e < g.edge_count(); ++e)
    if (classify_node(g, e) != NodeKind::separating) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Stabilization

StableGraph stabilize(const StableGraph& input) {
  if (connected_components(input) != 1) throw InputError("stabilize: graph must be connected");
  if (arithmetic_genus(input) < 2) throw InputError("stabilize: genus must be at least 2");

  std::vector<int> genera = input.genera();
  std::vector<Edge> edges = input.edges();

  auto erase_vertex = [&](int v) {
    genera.erase(genera.begin() + v);
    for (Edge& e : edges) {
      if (e.u > v) --e.u;
      if (e.v > v) --e.v;
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < static_cast<int>(genera.size()) && !changed; ++v) {
      if (genera[v] != 0) continue;
      std::vector<int> incident;
      int deg = 0;
      for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        const int d = (edges[i].u == v) + (edges[i].v == v);
        if (d > 0) incident.push_back(i);
        deg += d;
      }
      if (deg == 1) {
        edges.erase(edges.begin() + incident[0]);
        erase_vertex(v);
        changed = true;
      } else if (deg == 2 && incident.size() == 2) {
        const Edge& a = edges[incident[0]];
        const Edge& b = edges[incident[1]];
        const int x = a.u == v ? a.v : a.u;
        const int y = b.u == v ? b.v : b.u;
        // The merged edge takes the slot of the first incident edge.
        edges[incident[0]] = Edge{std::min(x, y), std::max(x, y)};
        edges.erase(edges.begin() + incident[1]);
        erase_vertex(v);
        changed = true;
      }
    }
  }
  return StableGraph::make(std::move(genera), std::move(edges));
}

// ---------------------------------------------------------------------------
// Recognizers and named graphs

StableGraph split_graph(int genus) {
  if (genus < 2) throw InputError("split graph needs genus >= 2");
  return StableGraph::make({0, 0}, std::vector<Edge>(genus + 1, Edge{0, 1}));
}

StableGraph polygonal_graph() {
  return StableGraph::make({0, 0, 0, 0}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

bool is_split(const StableGraph& g, int genus) {
  if (g.vertex_count() != 2 || g.genera()[0] != 0 || g.genera()[1] != 0) return false;
  if (g.edge_count() != genus + 1) return false;
  return std::all_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return !e.is_loop(); });
}

bool is_polygonal_g3(const StableGraph& g) {
  static const CanonicalKey k4 = canonical_form(polygonal_graph());
  return g.vertex_count() == 4 && g.edge_count() == 6 && canonical_form(g) == k4;
}

// ---------------------------------------------------------------------------
// Canonical form
//
// Vertices are first colored by iterated refinement of (genus, loops,
// neighbor-color multiset); colors are label-independent and totally ordered,
// so positions in the canonical labeling are grouped by color. Within that
// constraint a branch-and-bound search finds the labeling whose code
// (genera, then upper-triangular adjacency listed column by column) is
// lexicographically smallest. Column-major order makes every partial
// labeling fix a prefix of the code, which is what the pruning relies on.

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix adjacency(const StableGraph& g) {
  const int n = g.vertex_count();
  Matrix a(n, std::vector<int>(n, 0));
  for (const Edge& e : g.edges()) {
    if (e.is_loop())
      ++a[e.u][e.u];
    else {
      ++a[e.u][e.v];
      ++a[e.v][e.u];
    }
  }
  return a;
}

std::vector<int> refine_colors(const StableGraph& g, const Matrix& adj) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> sig(n);
  for (int v = 0; v < n; ++v) sig[v] = {g.genera()[v], adj[v][v]};

  std::vector<int> color(n);
  int classes = 0;
  while (true) {
    std::vector<std::vector<int>> keys = sig;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
    const int now = static_cast<int>(keys.size());
    if (now == classes) break;
    classes = now;
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<int, int>> nb;
      for (int w = 0; w < n; ++w)
        if (w != v && adj[v][w] > 0) nb.emplace_back(color[w], adj[v][w]);
      std::sort(nb.begin(), nb.end());
      sig[v] = {color[v]};
      for (auto [c, m] : nb) {
        sig[v].push_back(c);
        sig[v].push_back(m);
      }
    }
  }
  return color;
}

struct CanonSearch {
  int n;
  const Matrix& adj;
  std::vector<int> slot_color;  // color required at each position
  std::vector<int> color;
  std::vector<int> perm;        // position -> vertex
  std::vector<char> used;
  std::vector<int> cur;
  std::vector<int> best;
  bool have_best = false;

  // -1, 0, 1 as the code prefix built so far compares to the same prefix of best.
  int compare_prefix() const {
    for (std::size_t k = 0; k < cur.size(); ++k)
      if (cur[k] != best[k]) return cur[k] < best[k] ? -1 : 1;
    return 0;
  }

  void search(int pos) {
    if (pos == n) {
      if (!have_best || compare_prefix() < 0) {
        best = cur;
        have_best = true;
      }
      return;
    }
    const std::size_t start = cur.size();
    for (int v = 0; v < n; ++v) {
      if (used[v] || color[v] != slot_color[pos]) continue;
      perm[pos] = v;
      for (int i = 0; i < pos; ++i) cur.push_back(adj[perm[i]][v]);
      cur.push_back(adj[v][v]);
      if (!have_best || compare_prefix() <= 0) {
        used[v] = 1;
        search(pos + 1);
        used[v] = 0;
      }
      cur.resize(start);
    }
  }
};

}  // namespace

CanonicalKey canonical_form(const StableGraph& g) {
  const int n = g.vertex_count();
  const Matrix adj = adjacency(g);
  const std::vector<int> color = refine_colors(g, adj);

  CanonSearch s{n, adj, {}, color, std::vector<int>(n), std::vector<char>(n, 0), {}, {}, false};
  s.slot_color = color;
  std::sort(s.slot_color.begin(), s.slot_color.end());
  s.search(0);

  std::vector<int> genus_by_color(n);
  for (int v = 0; v < n; ++v) genus_by_color[color[v]] = g.genera()[v];

  CanonicalKey key;
  key.code.reserve(1 + n + s.best.size());
  key.code.push_back(n);
  for (int pos = 0; pos < n; ++pos) key.code.push_back(genus_by_color[s.slot_color[pos]]);
  key.code.insert(key.code.end(), s.best.begin(), s.best.end());
  return key;
}

std::string CanonicalKey::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < code.size(); ++i) os << (i ? "." : "") << code[i];
  return os.str();
}

bool is_isomorphic(const StableGraph& a, const StableGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

StableGraph relabel(const StableGraph& g, const std::vector<int>& perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n) throw InputError("relabel: permutation size mismatch");
  std::vector<int> genera(n);
  for (int v = 0; v < n; ++v) genera[perm[v]] = g.genera()[v];
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return StableGraph::make_relaxed(std::move(genera), std::move(edges));
}

// ---------------------------------------------------------------------------
// Enumeration
//
// Contracting any edge of a stable graph yields a stable graph of the same
// genus with one edge fewer, so every genus-g stable graph is reached from
// the one-vertex graph by a chain of elementary degenerations: lower a
// vertex genus by one and add a loop, or split a vertex in two joined by a
// new edge. Each level (fixed edge count) is deduplicated by canonical key.

namespace {

struct KeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : k.code) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ULL;
    return h;
  }
};

void degenerations(const StableGraph& g, std::vector<StableGraph>& out) {
  const int n = g.vertex_count();
  const auto& edges = g.edges();

  for (int v = 0; v < n; ++v) {
    if (g.genera()[v] > 0) {
      std::vector<int> genera = g.genera();
      --genera[v];
      std::vector<Edge> e2 = edges;
      e2.push_back({v, v});
      out.push_back(StableGraph::make_relaxed(std::move(genera), std::move(e2)));
    }

    // Half-edges at v: (edge index, which end).
    std::vector<std::pair<int, int>> halves;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      if (edges[i].u == v) halves.emplace_back(i, 0);
      if (edges[i].v == v) halves.emplace_back(i, 1);
    }
    const int h = static_cast<int>(halves.size());
    const int w = n;
    for (int gv1 = 0; gv1 <= g.genera()[v]; ++gv1) {
      const int gv2 = g.genera()[v] - gv1;
      for (std::uint32_t mask = 0; mask < (1U << h); ++mask) {
        // Degrees after the split, including the new edge.
        int d1 = 1, d2 = 1;
        for (int k = 0; k < h; ++k) ((mask >> k) & 1U ? d2 : d1) += 1;
        if (2 * gv1 - 2 + d1 <= 0 || 2 * gv2 - 2 + d2 <= 0) continue;
        std::vector<Edge> e2 = edges;
        for (int k = 0; k < h; ++k) {
          if (!((mask >> k) & 1U)) continue;
          auto [idx, end] = halves[k];
          (end == 0 ? e2[idx].u : e2[idx].v) = w;
        }
        e2.push_back({v, w});
        std::vector<int> genera = g.genera();
        genera[v] = gv1;
        genera.push_back(gv2);
        out.push_back(StableGraph::make_relaxed(std::move(genera), std::move(e2)));
      }
    }
  }
}

}  // namespace

std::vector<StableGraph> enumerate_stable_graphs(int genus) {
  if (genus < 2 || genus > kMaxEnumerableGenus)
    throw InputError("enumerate_stable_graphs: genus must be in [2, " + std::to_string(kMaxEnumerableGenus) + "]");

  std::map<CanonicalKey, StableGraph> all;
  std::vector<StableGraph> level{StableGraph::make({genus}, {})};
  all.emplace(canonical_form(level.front()), level.front());

  std::vector<StableGraph> children;
  for (int delta = 1; delta <= 3 * genus - 3; ++delta) {
    std::unordered_set<CanonicalKey, KeyHash> seen;
    std::vector<StableGraph> next;
    for (const StableGraph& g : level) {
      children.clear();
      degenerations(g, children);
      for (StableGraph& c : children) {
        CanonicalKey key = canonical_form(c);
        if (seen.insert(key).second) {
          all.emplace(key, c);
          next.push_back(std::move(c));
        }
      }
    }
    level = std::move(next);
  }

  std::vector<StableGraph> out;
  out.reserve(all.size());
  for (auto& [key, g] : all) out.push_back(StableGraph::make(g.genera(), g.edges()));
  return out;
}

}  // namespace splitcurve

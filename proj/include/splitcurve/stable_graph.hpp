#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace splitcurve {

/// An edge of a dual graph. A loop (u == v) is an internal node.
struct Edge {
  int u = 0;
  int v = 0;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Dual graph of a nodal curve: vertices carry geometric genera, edges are
/// nodes with stable integer indices (their position in edges()).
///
/// Graphs built through `make` are validated stable curves: connected, every
/// vertex satisfies 2g_v - 2 + deg(v) > 0, arithmetic genus >= 2. Graphs
/// built through `make_relaxed` only have their indices checked; they model
/// partial normalizations, which are usually neither stable nor connected.
class StableGraph {
 public:
  static constexpr int kMaxEdges = 64;

  StableGraph() = default;

  static StableGraph make(std::vector<int> genera, std::vector<Edge> edges);
  static StableGraph make_relaxed(std::vector<int> genera, std::vector<Edge> edges);

  const std::vector<int>& genera() const { return genera_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(genera_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Degree with loops counted twice.
  int degree(int v) const;
  int loop_count(int v) const;
  int genus_sum() const;
  bool is_stable_vertex(int v) const { return 2 * genera_[v] - 2 + degree(v) > 0; }

  nlohmann::json to_json() const;
  static StableGraph from_json(const nlohmann::json& j, bool relaxed = false);

  friend bool operator==(const StableGraph&, const StableGraph&) = default;

 private:
  StableGraph(std::vector<int> genera, std::vector<Edge> edges)
      : genera_(std::move(genera)), edges_(std::move(edges)) {}

  std::vector<int> genera_;
  std::vector<Edge> edges_;
};

/// A set of nodes of a dual graph, stored as a mask over edge indices.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(int edge_count, std::uint64_t mask);
  NodeSet(const StableGraph& parent, const std::vector<int>& members);

  static NodeSet empty(const StableGraph& g) { return NodeSet(g.edge_count(), 0); }
  static NodeSet all(const StableGraph& g);

  int edge_count() const { return edge_count_; }
  std::uint64_t mask() const { return mask_; }
  int size() const;
  bool contains(int e) const { return (mask_ >> e) & 1U; }
  bool is_full() const;
  std::vector<int> members() const;
  NodeSet complement() const;
  NodeSet with(int e) const;

  /// Throws InputError if this set does not index into g.
  void check_against(const StableGraph& g) const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend auto operator<=>(const NodeSet& a, const NodeSet& b) { return a.mask_ <=> b.mask_; }

 private:
  int edge_count_ = 0;
  std::uint64_t mask_ = 0;
};

enum class NodeKind { internal, separating, nonseparating_external };

/// Canonical key: equal keys iff the genus-decorated multigraphs are isomorphic.
struct CanonicalKey {
  std::vector<int> code;

  std::string to_string() const;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

int arithmetic_genus(const StableGraph& g);
int connected_components(const StableGraph& g);
int betti_1(const StableGraph& g);

/// Components of g after deleting the edges in `removed` (mask over edges).
int connected_components_without(const StableGraph& g, std::uint64_t removed);

StableGraph normalize_at(const StableGraph& g, const NodeSet& sigma);
NodeKind classify_node(const StableGraph& g, int edge);

/// True iff every edge is a bridge (no loops, no cycles).
bool is_compact_type(const StableGraph& g);

/// Stable model of a connected semistable-or-worse graph of genus >= 2:
/// contracts rational tails and smooths rational bridges.
StableGraph stabilize(const StableGraph& g);

bool is_split(const StableGraph& g, int genus);
bool is_polygonal_g3(const StableGraph& g);

CanonicalKey canonical_form(const StableGraph& g);
bool is_isomorphic(const StableGraph& a, const StableGraph& b);

/// Relabels vertices: vertex v becomes perm[v]. Edge order is preserved.
StableGraph relabel(const StableGraph& g, const std::vector<int>& perm);

/// Named constructors for the graphs that recur throughout.
StableGraph split_graph(int genus);
StableGraph polygonal_graph();

constexpr int kMaxEnumerableGenus = 6;

/// One representative per isomorphism class of genus-g stable graphs,
/// sorted by canonical key.
std::vector<StableGraph> enumerate_stable_graphs(int genus);

}  // namespace splitcurve

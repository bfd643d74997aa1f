#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "splitcurve/stable_graph.hpp"

namespace splitcurve {

/// Exponents of the admissible node sets of a curve.
struct ExponentSet {
  std::set<int> values;

  bool contains(int n) const { return values.count(n) > 0; }
  friend bool operator==(const ExponentSet&, const ExponentSet&) = default;
};

/// Multiplicities (powers of two) of the components of a zero-dimensional scheme.
struct MultiplicitySet {
  std::set<std::int64_t> values;

  friend bool operator==(const MultiplicitySet&, const MultiplicitySet&) = default;
};

/// Spin curves supported on one admissible node set.
struct SpinSupportReport {
  NodeSet sigma;
  int exponent = 0;
  std::int64_t n_total = 0;
  std::int64_t n_odd = 0;
  std::int64_t multiplicity = 1;  // 2^exponent
};

bool is_admissible(const StableGraph& g, const NodeSet& sigma);

/// Complements of the elements of the GF(2) cycle space, sorted by mask.
std::vector<NodeSet> admissible_sets(const StableGraph& g);

/// Same list by filtering all 2^delta subsets; test oracle, delta <= 20.
std::vector<NodeSet> admissible_sets_bruteforce(const StableGraph& g);

/// Edge sets of closed polygons (single loops included): the connected
/// cycle-space elements in which every touched vertex has degree two.
std::vector<NodeSet> cyclic_sets(const StableGraph& g);

/// Drop in arithmetic genus under normalization at sigma (any sigma).
int exponent(const StableGraph& g, const NodeSet& sigma);
ExponentSet exponent_set(const StableGraph& g);

SpinSupportReport spin_counts(const StableGraph& g, const NodeSet& sigma);
MultiplicitySet multiplicity_set(const StableGraph& g);

/// Sum over admissible sets of n_odd * 2^e and n_total * 2^e.
struct DegreeSums {
  std::int64_t odd = 0;
  std::int64_t total = 0;
};
DegreeSums degree_sums(const StableGraph& g);

/// Statistics of the scheme of odd spin curves of exponent >= g-3 on a split curve.
struct SHatStats {
  std::int64_t components = 0;
  std::int64_t length = 0;
  MultiplicitySet multiplicities;
};
SHatStats s_hat_stats(int genus);

/// t_i = number of theta-hyperplanes of type i of a projective split curve.
std::map<int, std::int64_t> split_theta_counts(int genus);

/// Exponent set of the split curve from its closed form.
ExponentSet split_exponent_set_closed_form(int genus);

enum class CurveClass { split, polygonal_g3, other };
std::string to_string(CurveClass c);

/// True iff g in E and g-2 not in E.
bool classification_predicate(const StableGraph& g);
CurveClass classify(const StableGraph& g);

struct TheoremReport {
  int genus = 0;
  std::size_t graphs_checked = 0;
  std::vector<StableGraph> survivors;      // graphs satisfying the predicate
  std::vector<CurveClass> survivor_classes;
  bool holds = false;                       // survivors are exactly the expected classes
};
TheoremReport verify_split_classification(int genus);

/// Is there a surjection a: L -> M with a(l) >= l for every l?
bool dominates(const std::set<int>& L, const std::set<int>& M);

/// Exhaustive search over all maps L -> M; test oracle for small sets.
bool dominates_bruteforce(const std::set<int>& L, const std::set<int>& M);

}  // namespace splitcurve

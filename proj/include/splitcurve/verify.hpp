#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "splitcurve/stable_graph.hpp"

namespace splitcurve {

struct VerifyFailure {
  std::string statement;
  nlohmann::json graph;
  std::string detail;
};

/// Outcome of running one verification suite over all stable graphs of a genus.
struct VerifyReport {
  std::string suite;
  int genus = 0;
  std::size_t graphs_checked = 0;
  std::vector<VerifyFailure> failures;
  nlohmann::json summary = nlohmann::json::object();

  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

/// Suite identifiers accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_ids();

/// Complements of cyclic sets (and of disjoint unions of them).
VerifyReport verify_cyclic_complements(int genus);
/// Top exponents, maximality of the full node set, internal-node dichotomy.
VerifyReport verify_top_exponents(int genus);
/// Compact type iff the exponent set is {0}.
VerifyReport verify_compact_type(int genus);
/// Exponent sets are invariant under stabilization of random destabilizations.
VerifyReport verify_stabilization(int genus, int samples, std::uint64_t seed);
/// g in E and g-2 not in E selects split (and, in genus 3, polygonal) curves only.
VerifyReport verify_classification(int genus);
/// Weighted odd / total spin counts equal 2^(g-1)(2^g-1) and 2^(2g).
VerifyReport verify_degree_identity(int genus);

VerifyReport run_suite(const std::string& id, int genus, std::uint64_t seed = 20240601);

/// Adds `steps` random semistable modifications: rational bridges on edges
/// (loops included) and rational tails. Arithmetic genus is unchanged.
StableGraph destabilize(const StableGraph& g, std::mt19937_64& rng, int steps);

}  // namespace splitcurve

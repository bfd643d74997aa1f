#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace splitcurve {

using Rational = boost::rational<std::int64_t>;
using BigInt = boost::multiprecision::cpp_int;

// Hyperplane configurations attached to a rational normal curve C with
// marked points N_1..N_{g+1}:
//   type_a   hyperplanes of type g-3 of a projective split curve,
//   type_b   spans of g-3 points plus the tangent line at a further point,
//   type_c   spans of g-1 points,
//   combined 2^(g-3) * (type_a or type_b) + 2^(g-1) * type_c.
enum class ConfigKind { type_a, type_b, type_c, combined };

std::string to_string(ConfigKind k);
ConfigKind config_kind_from_string(const std::string& s);

struct ConfigSpec {
  ConfigKind kind = ConfigKind::type_b;
  int genus = 4;
  ConfigKind base = ConfigKind::type_b;  // only read for `combined`

  /// Total degree m of the configuration.
  std::int64_t degree() const;
  /// Throws InputError for genus below the kind's range or a bad combined base.
  void validate() const;
};

/// m (g-1-h) / g, for 0 <= h <= g-2.
Rational max_h(std::int64_t m, int genus, int h);

std::int64_t mu_closed_form(const ConfigSpec& spec, int h);

struct MuEntry {
  int h = 0;
  std::int64_t mu = 0;
  Rational max{0};

  bool stable() const { return Rational(mu) < max; }
};

struct MuProfile {
  ConfigSpec spec;
  std::vector<MuEntry> entries;
  bool stable = false;
};

MuProfile is_git_stable(const ConfigSpec& spec);

struct Mu0Separation {
  std::int64_t type_b = 0;
  std::int64_t type_a = 0;
  bool strict_gap = false;

  std::int64_t gap() const { return type_b - type_a; }
};

Mu0Separation mu0_separation(int genus);

// ---------------------------------------------------------------------------
// Exact incidence counting on symbolic configurations.

using ExactVector = std::vector<BigInt>;

struct ExactHyperplane {
  ExactVector covector;  // primitive integer vector
  std::int64_t multiplicity = 1;
};

struct ExactConfiguration {
  int dim = 0;
  std::vector<ExactHyperplane> entries;
};

/// Linear subspace of C^dim given by spanning vectors.
struct ExactSubspace {
  std::vector<ExactVector> generators;
};

/// Default marked-point parameters 0, 1, -1, 2, -2, ...
std::vector<std::int64_t> default_node_params(int count);

ExactVector moment_point(int dim, std::int64_t t);
ExactVector moment_tangent(int dim, std::int64_t t);

/// Primitive integer covector annihilating dim-1 independent vectors.
ExactVector exact_hyperplane_through(const std::vector<ExactVector>& vectors);
int exact_rank(const std::vector<ExactVector>& vectors);

ExactConfiguration symbolic_type_b(int genus, const std::vector<std::int64_t>& params);
ExactConfiguration symbolic_type_c(int genus, const std::vector<std::int64_t>& params);

/// Spans of h+1 marked points.
std::vector<ExactSubspace> node_span_candidates(int genus, const std::vector<std::int64_t>& params, int h);
/// Spans of a tangent line at one marked point and h-1 further marked points (h >= 1).
std::vector<ExactSubspace> tangent_candidates(int genus, const std::vector<std::int64_t>& params, int h);

/// Max over candidates of the total multiplicity of hyperplanes containing
/// the candidate. Every candidate must have dimension h (rank h+1).
std::int64_t mu_bruteforce(const ExactConfiguration& config, const std::vector<ExactSubspace>& candidates, int h);

/// Spans of random (h+1)-subsets of {points, tangent vectors} of full rank.
std::vector<ExactSubspace> random_generator_spans(int genus, const std::vector<std::int64_t>& params, int h,
                                                  int samples, std::mt19937_64& rng);

}  // namespace splitcurve

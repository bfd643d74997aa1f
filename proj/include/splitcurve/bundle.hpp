#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace splitcurve {

/// Degrees of the line-bundle summands of a vector bundle on P^1.
/// Order-free: degrees are kept sorted ascending.
class SplittingType {
 public:
  explicit SplittingType(std::vector<std::int64_t> degrees);

  const std::vector<std::int64_t>& degrees() const { return degrees_; }
  int rank() const { return static_cast<int>(degrees_.size()); }
  std::int64_t total_degree() const;
  std::int64_t min_degree() const { return degrees_.front(); }
  std::int64_t max_degree() const { return degrees_.back(); }
  bool balanced() const { return degrees_.front() == degrees_.back(); }

  friend bool operator==(const SplittingType&, const SplittingType&) = default;

 private:
  std::vector<std::int64_t> degrees_;
};

SplittingType tensor_shift(const SplittingType& s, std::int64_t k);

/// Invariant n' of F_{n'} obtained from F_n by one elementary transformation.
int elem_transform_rank2(int n, bool center_on_negative_section);

/// Can `generic` specialize to `special` in a family? Requires equal rank and degree.
bool semicontinuity_ok(const SplittingType& generic, const SplittingType& special);

struct NormalBundleConstants {
  std::int64_t degree = 0;
  std::int64_t h0 = 0;
  SplittingType splitting{{0}};
};

/// Normal bundle of a rational normal curve in P^(g-1).
NormalBundleConstants normal_bundle_constants(int genus);

enum class CertificateCase { generic, three_x_plus_two, genus_four };
std::string to_string(CertificateCase c);

/// Degree bookkeeping showing that the restricted modified normal bundle of a
/// general split curve has only negative summands (hence no sections).
struct VanishingCertificate {
  int genus = 0;
  CertificateCase kind = CertificateCase::generic;
  std::int64_t n = 0;          // elementary transformations: 4 C(g+1, g-3)
  std::int64_t f = 0;          // transformations per node fiber: C(g, 3)
  std::int64_t x = 0;          // g = 3x + 2 case only
  std::int64_t q = 0;          // full twists applied per summand
  std::int64_t twisted_points = 0;
  std::int64_t a = 0;          // degree of each summand after the twists (a or a')
  std::vector<std::int64_t> twisted_splitting;  // g-2 copies of a
  bool bound_is_exact = true;  // false when only an upper bound on the summands is known
  std::int64_t restricted_degree = 0;    // (g-2) a + (g+1)
  std::int64_t max_restricted_summand = 0;
  bool fiber_identity_ok = true;
  bool degree_conserved = false;
  bool negativity_ok = false;  // a < -(g+1), or the genus-4 spread argument
  bool all_negative = false;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;

  bool valid() const { return fiber_identity_ok && degree_conserved && all_negative; }
  nlohmann::json to_json() const;
};

VanishingCertificate vanishing_certificate(int genus);

/// C(3x+2, 3) == x + 3x * 3x(x+1)/2 as polynomials in x.
bool fiber_identity_holds_symbolically();

}  // namespace splitcurve

#include "splitcurve/bundle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/rational.hpp>

#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"

namespace splitcurve {

SplittingType::SplittingType(std::vector<std::int64_t> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw InputError("splitting type must have rank >= 1");
  std::sort(degrees_.begin(), degrees_.end());
}

std::int64_t SplittingType::total_degree() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), std::int64_t{0});
}

SplittingType tensor_shift(const SplittingType& s, std::int64_t k) {
  std::vector<std::int64_t> d = s.degrees();
  for (auto& x : d) x += k;
  return SplittingType(std::move(d));
}

int elem_transform_rank2(int n, bool center_on_negative_section) {
  if (n < 0) throw InputError("elem_transform_rank2: n must be non-negative");
  if (n == 0) return 1;
  return center_on_negative_section ? n + 1 : n - 1;
}

bool semicontinuity_ok(const SplittingType& generic, const SplittingType& special) {
  if (generic.rank() != special.rank()) throw InputError("semicontinuity_ok: rank mismatch");
  if (generic.total_degree() != special.total_degree()) throw InputError("semicontinuity_ok: degree mismatch");
  if (special.balanced()) return generic == special;
  return generic.max_degree() <= special.max_degree() && generic.min_degree() >= special.min_degree();
}

NormalBundleConstants normal_bundle_constants(int genus) {
  if (genus < 3) throw InputError("normal_bundle_constants: genus must be at least 3");
  const std::int64_t g = genus;
  return {(g - 2) * (g + 1), (g - 2) * (g + 2), SplittingType(std::vector<std::int64_t>(g - 2, g + 1))};
}

std::string to_string(CertificateCase c) {
  switch (c) {
    case CertificateCase::generic: return "generic";
    case CertificateCase::three_x_plus_two: return "g=3x+2";
    case CertificateCase::genus_four: return "g=4";
  }
  return "?";
}

nlohmann::json VanishingCertificate::to_json() const {
  return {{"g", genus},
          {"case", to_string(kind)},
          {"n", n},
          {"f", f},
          {"x", x},
          {"q", q},
          {"twisted_points", twisted_points},
          {"a", a},
          {"twisted_splitting", twisted_splitting},
          {"bound_is_exact", bound_is_exact},
          {"restricted_degree", restricted_degree},
          {"max_restricted_summand", max_restricted_summand},
          {"fiber_identity_ok", fiber_identity_ok},
          {"degree_conserved", degree_conserved},
          {"negativity_ok", negativity_ok},
          {"all_negative", all_negative},
          {"valid", valid()},
          {"assumptions", assumptions},
          {"notes", notes}};
}

VanishingCertificate vanishing_certificate(int genus) {
  if (genus < 4) throw InputError("vanishing_certificate: genus must be at least 4");
  const std::int64_t g = genus;
  VanishingCertificate c;
  c.genus = genus;
  c.n = 4 * binomial(g + 1, g - 3);
  c.f = binomial(g, 3);
  const std::int64_t rank = g - 2;
  const std::int64_t base_degree = rank * (g + 1);

  std::int64_t per_fiber_twists = 0;
  if (genus == 4) {
    c.kind = CertificateCase::genus_four;
  } else if (genus % 3 == 2) {
    c.kind = CertificateCase::three_x_plus_two;
  } else {
    c.kind = CertificateCase::generic;
  }

  if (c.kind == CertificateCase::three_x_plus_two) {
    c.x = (g - 2) / 3;
    per_fiber_twists = 3 * c.x * (c.x + 1) / 2;
    c.fiber_identity_ok = c.f == c.x + rank * per_fiber_twists;
    c.bound_is_exact = false;
  } else {
    c.fiber_identity_ok = c.f % rank == 0;
    per_fiber_twists = c.f / rank;
  }
  c.q = (g + 1) * per_fiber_twists;
  c.twisted_points = rank * c.q;
  c.a = g + 1 - c.q;
  c.twisted_splitting.assign(rank, c.a);
  c.degree_conserved = c.n == (g + 1) * c.f && base_degree - c.twisted_points == rank * c.a;
  c.restricted_degree = rank * c.a + (g + 1);

  if (c.kind == CertificateCase::genus_four) {
    // Two summands u <= v with u + v = -5; the spread bound v - u < 5 is an input.
    c.assumptions.push_back("spread of the restricted normal bundle is below 5: the five transformation centers do not lie on one section");
    c.negativity_ok = c.a == -5 && c.restricted_degree == -5;
    bool all_neg = c.negativity_ok;
    std::int64_t worst = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t spread = 0; spread < 5; ++spread) {
      if ((c.restricted_degree + spread) % 2 != 0) continue;
      const std::int64_t v = (c.restricted_degree + spread) / 2;
      const std::int64_t u = c.restricted_degree - v;
      all_neg = all_neg && u < 0 && v < 0;
      worst = std::max(worst, v);
    }
    c.max_restricted_summand = worst;
    c.all_negative = all_neg;
  } else {
    c.negativity_ok = c.a < -(g + 1);
    // g+1 inverse transformations raise a summand by at most g+1.
    c.max_restricted_summand = c.a + (g + 1);
    c.all_negative = c.negativity_ok && c.max_restricted_summand < 0;
  }
  if (c.kind == CertificateCase::three_x_plus_two)
    c.notes.push_back("summand degree a is an upper bound: x points per fiber are left untwisted");
  if (c.kind != CertificateCase::three_x_plus_two)
    c.notes.push_back("a = g+1 - n/(g-2) with n = 4C(g+1,4); the factorization n = (g-2)(g+1)g(g-1)/2 does not match n and is not used");
  return c;
}

namespace {

using Q = boost::rational<std::int64_t>;
using Poly = std::vector<Q>;  // coefficient of x^i at index i

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Q(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Poly trim(Poly p) {
  while (p.size() > 1 && p.back() == Q(0)) p.pop_back();
  return p;
}

}  // namespace

bool fiber_identity_holds_symbolically() {
  const Poly x{Q(0), Q(1)};
  // C(g,3) with g = 3x+2.
  const Poly lhs = mul(mul(mul(Poly{Q(2), Q(3)}, Poly{Q(1), Q(3)}), Poly{Q(0), Q(3)}), Poly{Q(1, 6)});
  // x + (g-2) * 3x(x+1)/2.
  const Poly rhs = add(x, mul(Poly{Q(0), Q(3)}, mul(mul(Poly{Q(0), Q(3)}, Poly{Q(1), Q(1)}), Poly{Q(1, 2)})));
  return trim(lhs) == trim(rhs);
}

}  // namespace splitcurve

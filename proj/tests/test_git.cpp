#include <doctest.h>

#include <random>

#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"
#include "splitcurve/git_stability.hpp"

using namespace splitcurve;

namespace {

ConfigSpec spec(ConfigKind k, int g, ConfigKind base = ConfigKind::type_b) { return {k, g, base}; }

std::int64_t brute(const ExactConfiguration& c, int g, int h, bool with_tangents) {
  const auto params = default_node_params(g + 1);
  std::int64_t mu = mu_bruteforce(c, node_span_candidates(g, params, h), h);
  if (with_tangents && h >= 1) mu = std::max(mu, mu_bruteforce(c, tangent_candidates(g, params, h), h));
  return mu;
}

}  // namespace

TEST_CASE("degrees and bounds") {
  CHECK(spec(ConfigKind::type_b, 4).degree() == 20);
  CHECK(spec(ConfigKind::type_c, 4).degree() == 10);
  CHECK(spec(ConfigKind::combined, 4).degree() == 2 * 20 + 8 * 10);
  CHECK(max_h(20, 4, 0) == Rational(15));
  CHECK(max_h(10, 4, 1) == Rational(5));
  CHECK(max_h(7, 3, 0) == Rational(14, 3));
  CHECK_THROWS_AS(max_h(10, 4, 3), InputError);
  CHECK_THROWS_AS(config_kind_from_string("d"), InputError);
  CHECK_THROWS_AS(spec(ConfigKind::type_b, 2).validate(), InputError);
}

TEST_CASE("closed-form examples") {
  CHECK(mu_closed_form(spec(ConfigKind::type_b, 4), 0) == 8);
  CHECK(mu_closed_form(spec(ConfigKind::type_b, 4), 1) == 2);
  CHECK(mu_closed_form(spec(ConfigKind::type_b, 4), 2) == 0);
  CHECK(mu_closed_form(spec(ConfigKind::type_c, 4), 0) == 6);
  CHECK(mu_closed_form(spec(ConfigKind::type_c, 4), 1) == 3);
  CHECK(mu_closed_form(spec(ConfigKind::type_a, 4), 0) == 4);
  const MuProfile p = is_git_stable(spec(ConfigKind::type_b, 4));
  CHECK(p.stable);
  REQUIRE(p.entries.size() == 3);
  CHECK(Rational(p.entries[0].mu) < p.entries[0].max);
}

TEST_CASE("closed form equals node-span brute force (kinds b, c)") {
  for (int g = 4; g <= 7; ++g) {
    const auto params = default_node_params(g + 1);
    const ExactConfiguration b = symbolic_type_b(g, params);
    const ExactConfiguration c = symbolic_type_c(g, params);
    CHECK(static_cast<std::int64_t>(b.entries.size()) == spec(ConfigKind::type_b, g).degree());
    CHECK(static_cast<std::int64_t>(c.entries.size()) == spec(ConfigKind::type_c, g).degree());
    for (int h = 0; h <= g - 2; ++h) {
      CHECK(brute(b, g, h, false) == mu_closed_form(spec(ConfigKind::type_b, g), h));
      CHECK(brute(c, g, h, false) == mu_closed_form(spec(ConfigKind::type_c, g), h));
    }
  }
}

TEST_CASE("stability for every kind (4 <= g <= 12)") {
  for (int g = 4; g <= 12; ++g)
    for (auto k : {ConfigKind::type_a, ConfigKind::type_b, ConfigKind::type_c}) {
      CHECK(is_git_stable(spec(k, g)).stable);
      CHECK(is_git_stable(spec(ConfigKind::combined, g, k == ConfigKind::type_c ? ConfigKind::type_b : k)).stable);
    }
}

TEST_CASE("combined configuration is additive") {
  for (int g = 4; g <= 6; ++g) {
    const auto params = default_node_params(g + 1);
    ExactConfiguration comb = symbolic_type_b(g, params);
    for (auto& e : comb.entries) e.multiplicity = pow2(g - 3);
    for (auto e : symbolic_type_c(g, params).entries) {
      e.multiplicity = pow2(g - 1);
      comb.entries.push_back(e);
    }
    for (int h = 0; h <= g - 2; ++h) {
      const std::int64_t want = mu_closed_form(spec(ConfigKind::combined, g), h);
      CHECK(want == pow2(g - 3) * mu_closed_form(spec(ConfigKind::type_b, g), h) +
                        pow2(g - 1) * mu_closed_form(spec(ConfigKind::type_c, g), h));
      CHECK(brute(comb, g, h, false) == want);
    }
  }
}

TEST_CASE("tangent spans exceed the kind-b closed form but stay stable") {
  // <T_{N1}, N2..Nh> lies in C(g-h+1, 3) type-b hyperplanes.
  for (int g = 4; g <= 8; ++g) {
    const auto params = default_node_params(g + 1);
    const ExactConfiguration b = symbolic_type_b(g, params);
    const std::int64_t m = b.entries.size();
    for (int h = 1; h <= g - 2; ++h) {
      const std::int64_t t = mu_bruteforce(b, tangent_candidates(g, params, h), h);
      CHECK(t == binomial(g - h + 1, 3));
      const std::int64_t true_max = std::max(t, brute(b, g, h, false));
      CHECK(Rational(true_max) < max_h(m, g, h));
    }
  }
  CHECK(mu_bruteforce(symbolic_type_b(4, default_node_params(5)), tangent_candidates(4, default_node_params(5), 1), 1) == 4);
  CHECK(mu_closed_form(spec(ConfigKind::type_b, 4), 1) == 2);
}

TEST_CASE("random generator spans never beat the candidate maximum (g = 4)") {
  const int g = 4;
  const auto params = default_node_params(g + 1);
  const ExactConfiguration b = symbolic_type_b(g, params);
  const ExactConfiguration c = symbolic_type_c(g, params);
  std::mt19937_64 rng(20240601);
  for (int h = 0; h <= g - 2; ++h) {
    const auto spans = random_generator_spans(g, params, h, 200, rng);
    CHECK(!spans.empty());
    CHECK(mu_bruteforce(b, spans, h) <= brute(b, g, h, true));
    CHECK(mu_bruteforce(c, spans, h) <= brute(c, g, h, true));
  }
}

TEST_CASE("mu_0 separates the two kinds by C(g, 3)") {
  for (int g = 4; g <= 12; ++g) {
    const Mu0Separation s = mu0_separation(g);
    CHECK(s.strict_gap);
    CHECK(s.gap() == binomial(g, 3));
  }
  CHECK_THROWS_AS(mu0_separation(3), InputError);
}

TEST_CASE("exact linear algebra") {
  const ExactVector p0 = moment_point(4, 0), p1 = moment_point(4, 1), t0 = moment_tangent(4, 0);
  CHECK(exact_rank({p0, p1, t0}) == 3);
  CHECK(exact_rank({p0, p1, p0}) == 2);
  const ExactVector h = exact_hyperplane_through({p0, p1, t0});
  auto dot = [](const ExactVector& a, const ExactVector& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  CHECK(dot(h, p0) == 0);
  CHECK(dot(h, p1) == 0);
  CHECK(dot(h, t0) == 0);
  CHECK(dot(h, moment_point(4, 2)) != 0);
  CHECK(default_node_params(5) == std::vector<std::int64_t>{0, 1, -1, 2, -2});
}

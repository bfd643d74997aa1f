#include "splitcurve/git_stability.hpp"

#include <algorithm>
#include <numeric>

#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"

namespace splitcurve {

std::string to_string(ConfigKind k) {
  switch (k) {
    case ConfigKind::type_a: return "a";
    case ConfigKind::type_b: return "b";
    case ConfigKind::type_c: return "c";
    case ConfigKind::combined: return "combined";
  }
  return "?";
}

ConfigKind config_kind_from_string(const std::string& s) {
  if (s == "a") return ConfigKind::type_a;
  if (s == "b") return ConfigKind::type_b;
  if (s == "c") return ConfigKind::type_c;
  if (s == "combined") return ConfigKind::combined;
  throw InputError("unknown configuration kind '" + s + "' (expected a, b, c or combined)");
}

void ConfigSpec::validate() const {
  if (genus < 3 || genus > 40) throw InputError("configuration genus must be in [3, 40]");
  if (kind == ConfigKind::combined && base != ConfigKind::type_a && base != ConfigKind::type_b)
    throw InputError("combined configuration base must be kind a or b");
}

std::int64_t ConfigSpec::degree() const {
  validate();
  const std::int64_t m_ab = 4 * binomial(genus + 1, genus - 3);
  const std::int64_t m_c = binomial(genus + 1, genus - 1);
  switch (kind) {
    case ConfigKind::type_a:
    case ConfigKind::type_b: return m_ab;
    case ConfigKind::type_c: return m_c;
    case ConfigKind::combined: return pow2(genus - 3) * m_ab + pow2(genus - 1) * m_c;
  }
  return 0;
}

Rational max_h(std::int64_t m, int genus, int h) {
  if (genus < 2) throw InputError("max_h: genus must be at least 2");
  if (h < 0 || h > genus - 2) throw InputError("max_h: h must lie in [0, g-2]");
  return Rational(m * (genus - 1 - h), genus);
}

std::int64_t mu_closed_form(const ConfigSpec& spec, int h) {
  spec.validate();
  const int g = spec.genus;
  if (h < 0 || h > g - 2) throw InputError("mu_closed_form: h must lie in [0, g-2]");
  switch (spec.kind) {
    case ConfigKind::type_a: return 4 * binomial(g - h, 4);
    case ConfigKind::type_b: return 4 * binomial(g - h, 4) + (h + 1) * binomial(g - h, 3);
    case ConfigKind::type_c: return binomial(g - h, 2);
    case ConfigKind::combined: {
      const ConfigSpec base{spec.base, g, spec.base};
      const ConfigSpec c{ConfigKind::type_c, g, ConfigKind::type_b};
      return pow2(g - 3) * mu_closed_form(base, h) + pow2(g - 1) * mu_closed_form(c, h);
    }
  }
  return 0;
}

MuProfile is_git_stable(const ConfigSpec& spec) {
  MuProfile p;
  p.spec = spec;
  const std::int64_t m = spec.degree();
  p.stable = true;
  for (int h = 0; h <= spec.genus - 2; ++h) {
    MuEntry e{h, mu_closed_form(spec, h), max_h(m, spec.genus, h)};
    p.stable = p.stable && e.stable();
    p.entries.push_back(e);
  }
  return p;
}

Mu0Separation mu0_separation(int genus) {
  if (genus < 4) throw InputError("mu0_separation: genus must be at least 4");
  Mu0Separation s;
  s.type_b = mu_closed_form({ConfigKind::type_b, genus, ConfigKind::type_b}, 0);
  s.type_a = mu_closed_form({ConfigKind::type_a, genus, ConfigKind::type_b}, 0);
  s.strict_gap = s.type_b > s.type_a;
  return s;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over the integers (fraction-free elimination).

namespace {

BigInt determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BigInt dot(const ExactVector& a, const ExactVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

int exact_rank(const std::vector<ExactVector>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<ExactVector> a = vectors;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[rank], a[p]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const BigInt f = a[i][c], piv = a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] * piv - a[rank][j] * f;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

ExactVector exact_hyperplane_through(const std::vector<ExactVector>& vectors) {
  if (vectors.empty()) throw InputError("exact_hyperplane_through: no vectors");
  const std::size_t dim = vectors[0].size();
  if (vectors.size() + 1 != dim) throw InputError("exact_hyperplane_through: need dim-1 vectors");
  for (const auto& v : vectors)
    if (v.size() != dim) throw InputError("exact_hyperplane_through: dimension mismatch");

  // Generalized cross product: signed maximal minors.
  ExactVector h(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<std::vector<BigInt>> minor;
    for (const auto& v : vectors) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < dim; ++j)
        if (j != k) row.push_back(v[j]);
      minor.push_back(std::move(row));
    }
    h[k] = (k % 2 == 0 ? 1 : -1) * determinant(std::move(minor));
  }
  BigInt g = 0;
  for (const auto& x : h) g = gcd(g, abs(x));
  if (g == 0) throw InputError("exact_hyperplane_through: vectors are dependent");
  for (auto& x : h) x /= g;
  return h;
}

std::vector<std::int64_t> default_node_params(int count) {
  std::vector<std::int64_t> p;
  for (int i = 0; static_cast<int>(p.size()) < count; ++i) {
    p.push_back(i == 0 ? 0 : (i + 1) / 2 * (i % 2 == 1 ? 1 : -1));
  }
  return p;
}

ExactVector moment_point(int dim, std::int64_t t) {
  ExactVector v(dim);
  BigInt p = 1;
  for (int k = 0; k < dim; ++k) {
    v[k] = p;
    p *= t;
  }
  return v;
}

ExactVector moment_tangent(int dim, std::int64_t t) {
  ExactVector v(dim, 0);
  BigInt p = 1;
  for (int k = 1; k < dim; ++k) {
    v[k] = k * p;
    p *= t;
  }
  return v;
}

namespace {

void check_params(int genus, const std::vector<std::int64_t>& params) {
  if (genus < 3) throw InputError("symbolic configuration: genus must be at least 3");
  if (static_cast<int>(params.size()) != genus + 1) throw InputError("symbolic configuration: need g+1 parameters");
  std::vector<std::int64_t> s = params;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw InputError("symbolic configuration: coincident parameters");
}

}  // namespace

ExactConfiguration symbolic_type_b(int genus, const std::vector<std::int64_t>& params) {
  check_params(genus, params);
  ExactConfiguration c;
  c.dim = genus;
  for (const auto& subset : k_subsets(genus + 1, genus - 3)) {
    for (int j = 0; j <= genus; ++j) {
      if (std::find(subset.begin(), subset.end(), j) != subset.end()) continue;
      std::vector<ExactVector> gens;
      for (int i : subset) gens.push_back(moment_point(genus, params[i]));
      gens.push_back(moment_point(genus, params[j]));
      gens.push_back(moment_tangent(genus, params[j]));
      c.entries.push_back({exact_hyperplane_through(gens), 1});
    }
  }
  return c;
}

ExactConfiguration symbolic_type_c(int genus, const std::vector<std::int64_t>& params) {
  check_params(genus, params);
  ExactConfiguration c;
  c.dim = genus;
  for (const auto& subset : k_subsets(genus + 1, genus - 1)) {
    std::vector<ExactVector> gens;
    for (int i : subset) gens.push_back(moment_point(genus, params[i]));
    c.entries.push_back({exact_hyperplane_through(gens), 1});
  }
  return c;
}

std::vector<ExactSubspace> node_span_candidates(int genus, const std::vector<std::int64_t>& params, int h) {
  check_params(genus, params);
  std::vector<ExactSubspace> out;
  for (const auto& subset : k_subsets(genus + 1, h + 1)) {
    ExactSubspace s;
    for (int i : subset) s.generators.push_back(moment_point(genus, params[i]));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ExactSubspace> tangent_candidates(int genus, const std::vector<std::int64_t>& params, int h) {
  check_params(genus, params);
  std::vector<ExactSubspace> out;
  if (h < 1) return out;
  for (int j = 0; j <= genus; ++j) {
    std::vector<int> others;
    for (int i = 0; i <= genus; ++i)
      if (i != j) others.push_back(i);
    for (const auto& subset : k_subsets(genus, h - 1)) {
      ExactSubspace s;
      s.generators.push_back(moment_point(genus, params[j]));
      s.generators.push_back(moment_tangent(genus, params[j]));
      for (int k : subset) s.generators.push_back(moment_point(genus, params[others[k]]));
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::int64_t mu_bruteforce(const ExactConfiguration& config, const std::vector<ExactSubspace>& candidates, int h) {
  std::int64_t best = 0;
  for (const ExactSubspace& cand : candidates) {
    for (const auto& v : cand.generators)
      if (static_cast<int>(v.size()) != config.dim) throw InputError("mu_bruteforce: dimension mismatch");
    if (exact_rank(cand.generators) != h + 1) throw InputError("mu_bruteforce: candidate is not of dimension h");
    std::int64_t count = 0;
    for (const ExactHyperplane& H : config.entries) {
      const bool inside = std::all_of(cand.generators.begin(), cand.generators.end(),
                                      [&](const ExactVector& v) { return dot(H.covector, v) == 0; });
      if (inside) count += H.multiplicity;
    }
    best = std::max(best, count);
  }
  return best;
}

std::vector<ExactSubspace> random_generator_spans(int genus, const std::vector<std::int64_t>& params, int h,
                                                  int samples, std::mt19937_64& rng) {
  check_params(genus, params);
  std::vector<ExactVector> pool;
  for (std::int64_t t : params) {
    pool.push_back(moment_point(genus, t));
    pool.push_back(moment_tangent(genus, t));
  }
  std::vector<ExactSubspace> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < samples && attempts++ < 100 * samples) {
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    ExactSubspace s;
    for (int k = 0; k <= h; ++k) s.generators.push_back(pool[idx[k]]);
    if (exact_rank(s.generators) == h + 1) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace splitcurve

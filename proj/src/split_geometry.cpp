#include "splitcurve/split_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"
#include "splitcurve/parallel.hpp"

namespace splitcurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Poly = std::vector<cplx>;  // ascending coefficients
using V3 = Eigen::Vector3cd;
using M3 = Eigen::Matrix3cd;

CVec moment_vector(int dim, cplx t) {
  CVec v(dim);
  cplx p = 1.0;
  for (int k = 0; k < dim; ++k) {
    v(k) = p;
    p *= t;
  }
  return v;
}

CVec moment_derivative(int dim, cplx t) {
  CVec v = CVec::Zero(dim);
  cplx p = 1.0;
  for (int k = 1; k < dim; ++k) {
    v(k) = static_cast<double>(k) * p;
    p *= t;
  }
  return v;
}

/// Quotient of p by (t - r); the remainder is dropped.
CVec deflate(const CVec& p, cplx r) {
  const Eigen::Index n = p.size() - 1;
  CVec q(n);
  cplx acc = p(n);
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    q(k) = acc;
    acc = p(k) + r * acc;
  }
  return q;
}

/// Orthonormal basis (columns) of {x : rows * x = 0}, which must have dimension `expected`.
CMat kernel_of(const CMat& rows, int expected, const std::string& what) {
  const Eigen::Index n = rows.cols();
  if (rows.rows() == 0) return CMat::Identity(n, n);
  Eigen::JacobiSVD<CMat> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index rank = n - expected;
  if (rank > 0 && s(rank - 1) <= 1e-11 * s(0))
    throw GenericityError(what + ": points are not in general position");
  return svd.matrixV().rightCols(expected);
}

/// Roots of a polynomial (ascending coefficients) via companion-matrix eigenvalues.
std::vector<cplx> poly_roots(std::vector<cplx> c) {
  double scale = 0.0;
  for (auto x : c) scale = std::max(scale, std::abs(x));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  CMat comp = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return r;
}

/// Roots (alpha : beta) of a alpha^2 + b alpha beta + c beta^2.
std::array<std::array<cplx, 2>, 2> homogeneous_quadratic_roots(cplx a, cplx b, cplx c) {
  const bool flip = std::abs(a) < std::abs(c);
  if (flip) std::swap(a, c);
  if (std::abs(a) == 0.0) throw GenericityError("quadratic vanishes identically");
  cplx d = std::sqrt(b * b - 4.0 * a * c);
  if (std::real(std::conj(b) * d) < 0) d = -d;
  const cplx q = -0.5 * (b + d);
  const cplx r1 = q / a;
  const cplx r2 = std::abs(q) > 0 ? c / q : cplx(0.0);
  if (flip) return {{{1.0, r1}, {1.0, r2}}};
  return {{{r1, 1.0}, {r2, 1.0}}};
}

/// Bilinear cross product (Eigen's conjugates its result for complex vectors).
V3 cross3(const V3& a, const V3& b) {
  return V3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

M3 adjugate(const M3& m) {
  M3 adj;
  const V3 r0 = m.row(0).transpose(), r1 = m.row(1).transpose(), r2 = m.row(2).transpose();
  adj.col(0) = cross3(r1, r2);
  adj.col(1) = cross3(r2, r0);
  adj.col(2) = cross3(r0, r1);
  return adj;
}

/// Lines l, m with E ~ l m^T + m l^T; empty if E has rank below 2.
std::vector<V3> split_line_pair(const M3& e) {
  const M3 b = adjugate(e);
  Eigen::Index i = 0;
  b.diagonal().cwiseAbs().maxCoeff(&i);
  if (std::abs(b(i, i)) <= 1e-12 * e.squaredNorm()) return {};
  const cplx beta = std::sqrt(-b(i, i));
  const V3 p = b.col(i) / beta;
  M3 cross;
  cross << 0.0, p(2), -p(1), -p(2), 0.0, p(0), p(1), -p(0), 0.0;
  const M3 c = e + cross;
  Eigen::Index r = 0, col = 0;
  c.cwiseAbs().maxCoeff(&r, &col);
  return {c.row(r).transpose(), c.col(col)};
}

std::vector<V3> intersect_line_conic(const V3& l, const M3& d) {
  Eigen::Index k = 0;
  l.cwiseAbs().maxCoeff(&k);
  const V3 u = cross3(l, V3::Unit((k + 1) % 3));
  const V3 w = cross3(l, V3::Unit((k + 2) % 3));
  const cplx a = u.transpose() * d * u, b = u.transpose() * d * w, c = w.transpose() * d * w;
  const auto roots = homogeneous_quadratic_roots(a, 2.0 * b, c);
  return {roots[0][0] * u + roots[0][1] * w, roots[1][0] * u + roots[1][1] * w};
}

double conic_residual(const V3& x, const M3& d) {
  return std::abs(cplx(x.transpose() * d * x)) / (x.squaredNorm() * d.norm());
}

/// Newton refinement of a common point of two conics.
V3 polish_conic_point(V3 x, const M3& d1, const M3& d2) {
  auto err = [&](const V3& y) { return std::max(conic_residual(y, d1), conic_residual(y, d2)); };
  double best = err(x);
  for (int it = 0; it < 6 && best > 0; ++it) {
    const V3 n = x.conjugate() / x.squaredNorm();
    Eigen::Matrix3cd j;
    j.row(0) = 2.0 * x.transpose() * d1;
    j.row(1) = 2.0 * x.transpose() * d2;
    j.row(2) = n.transpose();
    V3 f;
    f << cplx(x.transpose() * d1 * x), cplx(x.transpose() * d2 * x), cplx(n.transpose() * x) - 1.0;
    const V3 y = x - j.fullPivLu().solve(f);
    const double e = err(y);
    if (!(e < best)) break;
    best = e;
    x = y;
  }
  return x;
}

/// The four common points of two conics, via a degenerate member of their pencil.
std::vector<V3> intersect_conics(M3 d1, M3 d2) {
  d1 /= d1.norm();
  d2 /= d2.norm();
  const cplx c0 = d1.determinant(), c3 = d2.determinant();
  const cplx p1 = (d1 + d2).determinant(), pm1 = (d1 - d2).determinant();
  const cplx c2 = 0.5 * (p1 + pm1) - c0, c1 = 0.5 * (p1 - pm1) - c3;

  std::vector<std::pair<M3, const M3*>> candidates;
  const auto mus = poly_roots({c0, c1, c2, c3});
  for (cplx mu : mus) candidates.push_back({d1 + mu * d2, &d2});
  if (mus.size() < 3) candidates.push_back({d2, &d1});

  std::vector<V3> best;
  double best_err = kInf;
  for (const auto& [e, other] : candidates) {
    const auto lines = split_line_pair(e);
    if (lines.empty()) continue;
    std::vector<V3> pts;
    try {
      for (const V3& l : lines)
        for (const V3& p : intersect_line_conic(l, *other)) pts.push_back(p);
    } catch (const GenericityError&) {
      continue;
    }
    double err = 0.0;
    for (auto& p : pts) {
      p = polish_conic_point(p, d1, d2);
      err = std::max({err, conic_residual(p, d1), conic_residual(p, d2)});
    }
    if (err < best_err) {
      best_err = err;
      best = pts;
    }
  }
  if (best.empty()) throw GenericityError("conic intersection: no usable degenerate member in the pencil");
  return best;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

cplx coeff(const Poly& p, std::size_t k) { return k < p.size() ? p[k] : cplx(0.0); }

/// Normalized discriminant of a quadratic a + b t + c t^2 (ascending).
double quadratic_discriminant(const CVec& q) {
  const double n2 = q.squaredNorm();
  if (n2 == 0.0) return kInf;
  return std::abs(q(1) * q(1) - 4.0 * q(0) * q(2)) / n2;
}

/// Normalized discriminant of a cubic (ascending coefficients).
double cubic_discriminant(CVec p) {
  p /= p.norm();
  const cplx d = p(0), c = p(1), b = p(2), a = p(3);
  return std::abs(18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
                  27.0 * a * a * d * d);
}

/// (1 : t) or (0 : 1) for a double root of the residual quadratic, as a point of P^1.
Eigen::Vector2cd double_root(const CVec& q) {
  Eigen::Vector2cd r(2.0 * q(2), -q(1));
  if (r.norm() == 0.0) r << 0.0, 1.0;
  return r / r.norm();
}

std::string describe_subset(const std::vector<int>& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t i = 0; i < s.size(); ++i) o << (i ? "," : "") << s[i];
  o << "}";
  return o.str();
}

std::vector<int> complement(int n, const std::vector<int>& s) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
  return out;
}

}  // namespace

void Tolerances::validate() const {
  for (double t : {containment, tangency, clustering, uniqueness})
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("tolerances must be positive and finite");
}

RationalNormalCurve::RationalNormalCurve(CMat frame) : frame_(std::move(frame)) {
  if (frame_.rows() != frame_.cols() || frame_.rows() < 2)
    throw InputError("rational normal curve frame must be square of size at least 2");
  Eigen::JacobiSVD<CMat> svd(frame_);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) == 0.0) throw GenericityError("rational normal curve frame is singular");
  condition_ = s(0) / s(s.size() - 1);
  if (condition_ > 1e13) throw GenericityError("rational normal curve frame is numerically singular");
}

CVec RationalNormalCurve::point(cplx t) const { return frame_ * moment_vector(dim(), t); }
CVec RationalNormalCurve::tangent(cplx t) const { return frame_ * moment_derivative(dim(), t); }

CVec ProjectiveSplitCurve::node(int i) const {
  return normalize_covector(components[0].point(node_params[0].at(i)));
}

std::vector<CVec> ProjectiveSplitCurve::nodes() const {
  std::vector<CVec> out;
  for (int i = 0; i < node_count(); ++i) out.push_back(node(i));
  return out;
}

CVec normalize_covector(const CVec& h) {
  const double n = h.norm();
  if (n == 0.0) throw InputError("zero covector");
  Eigen::Index k = 0;
  h.cwiseAbs().maxCoeff(&k);
  const cplx phase = std::conj(h(k)) / std::abs(h(k));
  return h * phase / n;
}

double projective_distance(const CVec& a, const CVec& b) {
  const double na = a.squaredNorm(), nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) return kInf;
  // Sine of the angle via the residual of projecting a onto b; stable near zero.
  const CVec r = a - b * (b.dot(a) / nb);
  return std::min(1.0, r.norm() / std::sqrt(na));
}

double incidence_residual(const CVec& h, const CVec& p) {
  return std::abs(cplx(h.transpose() * p)) / (h.norm() * p.norm());
}

namespace {

void check_parameters(const std::vector<cplx>& p, const std::string& which, double tol) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag()))
      throw InputError(which + " parameters must be finite");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(p[i] - p[j]) <= tol)
        throw GenericityError(which + " parameters " + std::to_string(j) + " and " + std::to_string(i) +
                              " coincide");
  }
}

cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) { return ((a - c) * (b - d)) / ((a - d) * (b - c)); }

}  // namespace

ProjectiveSplitCurve build_split_curve(int genus, const std::vector<cplx>& t, const std::vector<cplx>& s,
                                       const Tolerances& tol) {
  tol.validate();
  if (genus < 3) throw InputError("split curve genus must be at least 3");
  const int g = genus;
  if (static_cast<int>(t.size()) != g + 1 || static_cast<int>(s.size()) != g + 1)
    throw InputError("split curve needs g+1 node parameters on each component");
  check_parameters(t, "first component", tol.clustering);
  check_parameters(s, "second component", tol.clustering);

  bool mobius = true;
  for (int k = 3; k <= g && mobius; ++k)
    mobius = std::abs(cross_ratio(t[0], t[1], t[2], t[k]) - cross_ratio(s[0], s[1], s[2], s[k])) <= tol.clustering;
  if (mobius) throw GenericityError("node parameters are related by a Mobius map: the components coincide");

  CMat tm(g, g), sm(g, g);
  for (int i = 0; i < g; ++i) {
    tm.col(i) = moment_vector(g, t[i]);
    sm.col(i) = moment_vector(g, s[i]);
  }
  for (const auto& subset : k_subsets(g + 1, g)) {
    CMat m(g, g);
    for (int i = 0; i < g; ++i) m.col(i) = moment_vector(g, t[subset[i]]).normalized();
    Eigen::JacobiSVD<CMat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(g - 1) <= 1e-12 * sv(0))
      throw GenericityError("nodes " + describe_subset(subset) + " are not in general position (minor vanishes)");
  }
  const CVec alpha = sm.fullPivLu().solve(moment_vector(g, s[g]));
  const CVec beta = tm.fullPivLu().solve(moment_vector(g, t[g]));
  CVec ratio(g);
  for (int i = 0; i < g; ++i) {
    if (std::abs(alpha(i)) < 1e-14 || std::abs(beta(i)) < 1e-14)
      throw GenericityError("node " + std::to_string(i) + " is dependent on the others");
    ratio(i) = beta(i) / alpha(i);
  }
  const CMat a = tm * ratio.asDiagonal() * sm.fullPivLu().inverse();
  return ProjectiveSplitCurve{{RationalNormalCurve(CMat::Identity(g, g)), RationalNormalCurve(a)}, {t, s}};
}

ProjectiveSplitCurve random_split_curve(int genus, std::uint64_t seed, const Tolerances& tol) {
  if (genus < 3) throw InputError("split curve genus must be at least 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::array<std::vector<cplx>, 2> p;
    bool separated = true;
    for (auto& side : p) {
      for (int i = 0; i <= genus; ++i) {
        const double re = u(rng), im = u(rng);
        side.emplace_back(re, im);
      }
      for (int i = 0; i <= genus; ++i)
        for (int j = 0; j < i; ++j) separated = separated && std::abs(side[i] - side[j]) > 0.2;
    }
    if (!separated) continue;
    try {
      return build_split_curve(genus, p[0], p[1], tol);
    } catch (const GenericityError&) {
    }
  }
  throw GenericityError("could not draw a generic split curve");
}

std::int64_t HyperplaneConfiguration::total_degree() const {
  std::int64_t d = 0;
  for (const auto& e : entries) d += e.multiplicity;
  return d;
}

std::vector<HyperplaneEntry> HyperplaneConfiguration::with_multiplicity(std::int64_t m) const {
  std::vector<HyperplaneEntry> out;
  for (const auto& e : entries)
    if (e.multiplicity == m) out.push_back(e);
  return out;
}

nlohmann::json HyperplaneConfiguration::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json cov = nlohmann::json::array();
    for (Eigen::Index i = 0; i < e.covector.size(); ++i) {
      cov.push_back(e.covector(i).real());
      cov.push_back(e.covector(i).imag());
    }
    arr.push_back({{"covector", cov}, {"multiplicity", e.multiplicity}, {"type", e.type}});
  }
  return {{"g", dim}, {"degree", total_degree()}, {"entries", arr}};
}

HyperplaneConfiguration HyperplaneConfiguration::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw InputError("configuration JSON needs an \"entries\" array");
  HyperplaneConfiguration c;
  c.dim = j.value("g", 0);
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("covector") || !e["covector"].is_array())
      throw InputError("configuration entry needs a \"covector\" array");
    const auto& cov = e["covector"];
    if (cov.size() < 4 || cov.size() % 2 != 0) throw InputError("covector must list re,im pairs");
    const int n = static_cast<int>(cov.size() / 2);
    if (c.dim == 0) c.dim = n;
    if (n != c.dim) throw InputError("covector length does not match the genus");
    HyperplaneEntry h;
    h.covector.resize(n);
    for (int i = 0; i < n; ++i) {
      if (!cov[2 * i].is_number() || !cov[2 * i + 1].is_number()) throw InputError("covector entries must be numbers");
      h.covector(i) = cplx(cov[2 * i].get<double>(), cov[2 * i + 1].get<double>());
    }
    if (h.covector.norm() == 0.0) throw InputError("zero covector in configuration");
    h.multiplicity = e.value("multiplicity", std::int64_t{1});
    if (h.multiplicity < 1) throw InputError("multiplicity must be positive");
    h.type = e.value("type", -1);
    c.entries.push_back(std::move(h));
  }
  if (c.entries.empty()) throw InputError("configuration has no entries");
  return c;
}

namespace {

std::vector<int> hungarian(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n);
  for (int j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

}  // namespace

double configuration_distance(const HyperplaneConfiguration& a, const HyperplaneConfiguration& b) {
  if (a.dim != b.dim) return kInf;
  std::map<std::int64_t, std::pair<std::vector<const CVec*>, std::vector<const CVec*>>> strata;
  for (const auto& e : a.entries) strata[e.multiplicity].first.push_back(&e.covector);
  for (const auto& e : b.entries) strata[e.multiplicity].second.push_back(&e.covector);
  double worst = 0.0;
  for (const auto& [mult, sides] : strata) {
    const auto& [x, y] = sides;
    if (x.size() != y.size()) return kInf;
    std::vector<std::vector<double>> cost(x.size(), std::vector<double>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) cost[i][j] = projective_distance(*x[i], *y[j]);
    const auto match = hungarian(cost);
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, cost[i][match[i]]);
  }
  return worst;
}

HyperplaneConfiguration theta_type_g1(const ProjectiveSplitCurve& x, const Tolerances& tol) {
  const int g = x.genus();
  const auto nodes = x.nodes();
  HyperplaneConfiguration c;
  c.dim = g;
  for (const auto& subset : k_subsets(g + 1, g - 1)) {
    CMat rows(g - 1, g);
    for (int i = 0; i < g - 1; ++i) rows.row(i) = nodes[subset[i]].transpose();
    const CVec h = normalize_covector(kernel_of(rows, 1, "span of nodes " + describe_subset(subset)).col(0));
    for (int k : complement(g + 1, subset))
      if (incidence_residual(h, nodes[k]) <= tol.containment)
        throw GenericityError("span of nodes " + describe_subset(subset) + " contains node " + std::to_string(k));
    c.entries.push_back({h, 1, g - 1});
  }
  return c;
}

double tangency_residual(const RationalNormalCurve& c, const CVec& h, const std::vector<cplx>& divide_out) {
  if (h.size() != c.dim()) throw InputError("tangency_residual: dimension mismatch");
  if (c.dim() - 1 - static_cast<int>(divide_out.size()) != 2)
    throw InputError("tangency_residual: residual polynomial must be quadratic");
  CVec p = c.restrict(h);
  p /= p.norm();
  for (cplx r : divide_out) p = deflate(p, r);
  return quadratic_discriminant(p);
}

namespace {

struct TangentSolution {
  CVec covector;
  std::array<Eigen::Vector2cd, 2> touch;  // tangency point on each component, in P^1
};

std::vector<TangentSolution> tangent_solutions(const ProjectiveSplitCurve& x, const std::vector<int>& subset,
                                               const Tolerances& tol) {
  const int g = x.genus();
  if (static_cast<int>(subset.size()) != g - 3) throw InputError("common tangent hyperplanes need g-3 nodes");
  for (int i : subset)
    if (i < 0 || i > g) throw InputError("node index out of range");
  const std::string what = "hyperplanes through nodes " + describe_subset(subset);

  CMat rows(g - 3, g);
  for (int i = 0; i < g - 3; ++i) rows.row(i) = x.node(subset[i]).transpose();
  const CMat basis = kernel_of(rows, 3, what);

  std::array<CMat, 2> quad;
  std::array<M3, 2> disc;
  for (int k = 0; k < 2; ++k) {
    const CMat polys = x.components[k].frame().transpose() * basis;
    quad[k].resize(3, 3);
    for (int j = 0; j < 3; ++j) {
      CVec p = polys.col(j);
      for (int i : subset) p = deflate(p, x.node_params[k][i]);
      quad[k].col(j) = p;
    }
    const V3 c0 = quad[k].row(0).transpose(), c1 = quad[k].row(1).transpose(), c2 = quad[k].row(2).transpose();
    disc[k] = c1 * c1.transpose() - 2.0 * (c2 * c0.transpose() + c0 * c2.transpose());
  }

  std::vector<TangentSolution> out;
  for (const V3& lambda : intersect_conics(disc[0], disc[1])) {
    TangentSolution s;
    s.covector = normalize_covector(basis * lambda);
    for (int k = 0; k < 2; ++k) {
      CVec p = x.components[k].restrict(s.covector);
      p /= p.norm();
      for (int i : subset) p = deflate(p, x.node_params[k][i]);
      const double r = quadratic_discriminant(p);
      if (!(r <= tol.tangency)) {
        std::ostringstream o;
        o << what << ": tangency residual " << r << " on component " << k << " exceeds tolerance";
        throw GenericityError(o.str());
      }
      s.touch[k] = double_root(p);
    }
    out.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (projective_distance(out[i].covector, out[j].covector) <= tol.clustering)
        throw GenericityError(what + ": tangent hyperplanes are not distinct");
  const auto nodes = x.nodes();
  for (const auto& s : out)
    for (int k : complement(g + 1, subset))
      if (incidence_residual(s.covector, nodes[k]) <= tol.containment)
        throw GenericityError(what + ": a tangent hyperplane passes through node " + std::to_string(k));
  return out;
}

}  // namespace

std::vector<CVec> common_tangent_hyperplanes(const ProjectiveSplitCurve& x, const std::vector<int>& subset,
                                             const Tolerances& tol) {
  std::vector<CVec> out;
  for (auto& s : tangent_solutions(x, subset, tol)) out.push_back(std::move(s.covector));
  return out;
}

HyperplaneConfiguration theta_type_g3(const ProjectiveSplitCurve& x, const Tolerances& tol) {
  tol.validate();
  const int g = x.genus();
  const auto subsets = k_subsets(g + 1, g - 3);
  std::vector<std::vector<TangentSolution>> per(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) { per[i] = tangent_solutions(x, subsets[i], tol); });

  // Theta-genericity: tangency points pairwise distinct and away from the nodes.
  for (int k = 0; k < 2; ++k) {
    std::vector<Eigen::Vector2cd> pts;
    for (const auto& v : per)
      for (const auto& s : v) pts.push_back(s.touch[k]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (projective_distance(pts[i], pts[j]) <= tol.clustering)
          throw GenericityError("curve is not theta-generic: two tangency points coincide on component " +
                                std::to_string(k));
      for (cplx t : x.node_params[k])
        if (projective_distance(pts[i], Eigen::Vector2cd(1.0, t)) <= tol.clustering)
          throw GenericityError("curve is not theta-generic: a tangency point is a node");
    }
  }
  HyperplaneConfiguration c;
  c.dim = g;
  for (const auto& v : per)
    for (const auto& s : v) c.entries.push_back({s.covector, 1, g - 3});
  return c;
}

HyperplaneConfiguration theta_hat(const ProjectiveSplitCurve& x, const Tolerances& tol) {
  const int g = x.genus();
  HyperplaneConfiguration c = theta_type_g3(x, tol);
  for (auto& e : c.entries) e.multiplicity = pow2(g - 3);
  for (auto e : theta_type_g1(x, tol).entries) {
    e.multiplicity = pow2(g - 1);
    c.entries.push_back(std::move(e));
  }
  return c;
}

HyperplaneConfiguration theta_hat_hyperelliptic(int genus, const std::vector<cplx>& params, const Tolerances& tol) {
  tol.validate();
  const int g = genus;
  if (g < 3) throw InputError("hyperelliptic configuration genus must be at least 3");
  if (static_cast<int>(params.size()) != g + 1) throw InputError("hyperelliptic configuration needs g+1 parameters");
  check_parameters(params, "node", tol.clustering);
  std::vector<CVec> nodes;
  for (cplx t : params) nodes.push_back(moment_vector(g, t).normalized());

  HyperplaneConfiguration c;
  c.dim = g;
  for (const auto& subset : k_subsets(g + 1, g - 3)) {
    for (int j : complement(g + 1, subset)) {
      CMat rows(g - 1, g);
      for (int i = 0; i < g - 3; ++i) rows.row(i) = nodes[subset[i]].transpose();
      rows.row(g - 3) = nodes[j].transpose();
      rows.row(g - 2) = moment_derivative(g, params[j]).normalized().transpose();
      c.entries.push_back({normalize_covector(kernel_of(rows, 1, "tangent span").col(0)), pow2(g - 3), g - 3});
    }
  }
  for (const auto& subset : k_subsets(g + 1, g - 1)) {
    CMat rows(g - 1, g);
    for (int i = 0; i < g - 1; ++i) rows.row(i) = nodes[subset[i]].transpose();
    c.entries.push_back({normalize_covector(kernel_of(rows, 1, "node span").col(0)), pow2(g - 1), g - 1});
  }
  return c;
}

std::vector<int> incidence_counts(const std::vector<HyperplaneEntry>& planes, const std::vector<CVec>& points,
                                  double tol) {
  std::vector<int> counts;
  for (const auto& p : points) {
    int n = 0;
    for (const auto& h : planes) n += incidence_residual(h.covector, p) <= tol ? 1 : 0;
    counts.push_back(n);
  }
  return counts;
}

std::vector<CVec> recover_nodes(const HyperplaneConfiguration& config, int genus, const Tolerances& tol) {
  tol.validate();
  const int g = genus;
  if (g < 3) throw InputError("recover_nodes: genus must be at least 3");
  if (config.dim != g) throw InputError("recover_nodes: configuration dimension does not match the genus");
  const auto planes = config.with_multiplicity(pow2(g - 1));
  if (static_cast<int>(planes.size()) < g - 1)
    throw GenericityError("recover_nodes: too few hyperplanes of multiplicity 2^(g-1)");

  std::vector<CVec> reps;
  for (const auto& tuple : k_subsets(static_cast<int>(planes.size()), g - 1)) {
    CMat rows(g - 1, g);
    for (int i = 0; i < g - 1; ++i) rows.row(i) = planes[tuple[i]].covector.transpose();
    Eigen::JacobiSVD<CMat> svd(rows, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(g - 2) <= 1e-6 * s(0)) continue;
    const CVec p = normalize_covector(svd.matrixV().col(g - 1));
    const bool seen = std::any_of(reps.begin(), reps.end(),
                                  [&](const CVec& r) { return projective_distance(r, p) <= tol.clustering; });
    if (!seen) reps.push_back(p);
  }
  const auto counts = incidence_counts(planes, reps, tol.containment);
  std::vector<CVec> out;
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (counts[i] == binomial(g, 2)) out.push_back(reps[i]);
  if (static_cast<int>(out.size()) != g + 1)
    throw GenericityError("recover_nodes: expected " + std::to_string(g + 1) + " points on " +
                          std::to_string(binomial(g, 2)) + " hyperplanes each, found " +
                          std::to_string(out.size()));
  return out;
}

ProjectiveSplitCurve project_from_nodes(const ProjectiveSplitCurve& x, const std::vector<int>& subset, CMat* basis) {
  const int g = x.genus();
  const int d = g - static_cast<int>(subset.size());
  if (d < 3) throw InputError("projection must leave a curve of genus at least 3");
  CMat rows(g - d, g);
  for (int i = 0; i < g - d; ++i) rows.row(i) = x.node(subset.at(i)).transpose();
  const CMat k = kernel_of(rows, d, "projection centre " + describe_subset(subset));
  if (basis) *basis = k;
  const auto keep = complement(g + 1, subset);
  std::array<CMat, 2> frames;
  std::array<std::vector<cplx>, 2> params;
  for (int c = 0; c < 2; ++c) {
    const CMat image = k.transpose() * x.components[c].frame();  // d x g, rows are polynomials
    frames[c].resize(d, d);
    for (int r = 0; r < d; ++r) {
      CVec p = image.row(r).transpose();
      for (int i : subset) p = deflate(p, x.node_params[c][i]);
      frames[c].row(r) = p.transpose();
    }
    for (int i : keep) params[c].push_back(x.node_params[c][i]);
  }
  return ProjectiveSplitCurve{{RationalNormalCurve(frames[0]), RationalNormalCurve(frames[1])}, params};
}

ConicPair reconstruct_g3(const std::vector<V3>& lines, const std::vector<V3>& nodes, const Tolerances& tol) {
  tol.validate();
  if (lines.size() != 4 || nodes.size() != 4) throw InputError("reconstruct_g3 needs four lines and four points");
  auto sym = [](const V3& a, const V3& b) -> M3 { return 0.5 * (a * b.transpose() + b * a.transpose()); };
  const M3 qa = sym(cross3(nodes[0], nodes[1]), cross3(nodes[2], nodes[3]));
  const M3 qb = sym(cross3(nodes[0], nodes[2]), cross3(nodes[1], nodes[3]));
  if (qa.norm() == 0.0 || qb.norm() == 0.0) throw GenericityError("reconstruct_g3: points are not distinct");

  // Conics of the pencil tangent to a line: l^T adj(Q) l = 0, quadratic on the pencil.
  const V3 l = lines[0] / lines[0].norm();
  auto f = [&](cplx a, cplx b) { return cplx(l.transpose() * adjugate(a * qa + b * qb) * l); };
  const cplx fa = f(1.0, 0.0), fc = f(0.0, 1.0), fb = f(1.0, 1.0) - fa - fc;
  const auto roots = homogeneous_quadratic_roots(fa, fb, fc);

  std::array<M3, 2> conics;
  for (int r = 0; r < 2; ++r) {
    M3 q = roots[r][0] * qa + roots[r][1] * qb;
    q /= q.norm();
    for (std::size_t i = 0; i < 4; ++i)
      if (conic_residual(nodes[i], q) > tol.containment)
        throw GenericityError("reconstruct_g3: conic misses point " + std::to_string(i));
    const M3 adj = adjugate(q);
    for (std::size_t i = 0; i < 4; ++i) {
      const double res = conic_residual(lines[i], adj);
      if (!(res <= tol.tangency)) {
        std::ostringstream o;
        o << "reconstruct_g3: line " << i << " is not tangent to the recovered conic (residual " << res << ")";
        throw GenericityError(o.str());
      }
    }
    conics[r] = q;
  }
  if (conic_distance(conics[0], conics[1]) <= tol.clustering)
    throw GenericityError("reconstruct_g3: the two conics coincide");
  return {conics[0], conics[1]};
}

double conic_distance(const M3& a, const M3& b) {
  return projective_distance(Eigen::Map<const CVec>(a.data(), 9), Eigen::Map<const CVec>(b.data(), 9));
}

M3 conic_of(const RationalNormalCurve& c) {
  if (c.dim() != 3) throw InputError("conic_of: curve must lie in the plane");
  M3 q0;
  q0 << 0.0, 0.0, 0.5, 0.0, -1.0, 0.0, 0.5, 0.0, 0.0;
  const M3 inv = c.frame().inverse();
  M3 q = inv.transpose() * q0 * inv;
  return q / q.norm();
}

std::vector<int> mu0_signature(const HyperplaneConfiguration& config, const std::vector<CVec>& nodes, int genus,
                               double tol) {
  return incidence_counts(config.with_multiplicity(pow2(genus - 3)), nodes, tol);
}

namespace {

using M4 = Eigen::Matrix4cd;
using V4 = Eigen::Vector4cd;

/// Cubic through n1, n2 residual to the line n1 n2 in the intersection of a
/// cone with vertex n1 and a cone with vertex n2.
CMat residual_cubic(const M4& q1, const M4& q2, const V4& n1, const V4& n2) {
  Eigen::Matrix<cplx, 2, 4> m;
  m.row(0) = n1.adjoint();
  m.row(1) = n2.adjoint();
  const CMat w = kernel_of(m, 2, "line through two nodes");
  const V4 w0 = w.col(0), w1 = w.col(1);
  auto lin = [](const V4& a, const M4& q, const V4& b0, const V4& b1) -> Poly {
    return {cplx(a.transpose() * q * b0), cplx(a.transpose() * q * b1)};
  };
  auto quad = [&](const M4& q) -> Poly {
    return {cplx(w0.transpose() * q * w0), 2.0 * cplx(w0.transpose() * q * w1), cplx(w1.transpose() * q * w1)};
  };
  const Poly beta1 = lin(n2, q1, w0, w1), alpha2 = lin(n1, q2, w0, w1);
  const Poly gamma1 = quad(q1), gamma2 = quad(q2);
  const Poly a = poly_mul(beta1, gamma2), b = poly_mul(alpha2, gamma1), c = poly_mul(alpha2, beta1);
  CMat f(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    f.col(k) = 2.0 * coeff(a, k) * n1 + 2.0 * coeff(b, k) * n2 - 4.0 * (coeff(c, k) * w0);
    if (k > 0) f.col(k) -= 4.0 * coeff(c, k - 1) * w1;
  }
  return f;
}

cplx parameter_of(const RationalNormalCurve& c, const CVec& p, double tol) {
  const CVec w = c.frame().fullPivLu().solve(p);
  if (std::abs(w(0)) <= 1e-10 * w.norm()) throw GenericityError("node sits at the parameter infinity of a component");
  const cplx u = w(1) / w(0);
  if (projective_distance(c.point(u), p) > tol) throw GenericityError("recovered component misses a node");
  return u;
}

}  // namespace

G4Reconstruction reconstruct_g4(const HyperplaneConfiguration& config, const Tolerances& tol) {
  tol.validate();
  constexpr int g = 4;
  if (config.dim != g) throw InputError("reconstruct_g4 needs a configuration in P^3");
  const auto nodes = recover_nodes(config, g, tol);
  const auto planes = config.with_multiplicity(pow2(g - 3));
  if (static_cast<int>(planes.size()) != 4 * binomial(g + 1, 4))
    throw GenericityError("reconstruct_g4: expected 20 hyperplanes of multiplicity 2");
  const auto signature = mu0_signature(config, nodes, g, tol.containment);
  for (std::size_t i = 0; i < signature.size(); ++i)
    if (signature[i] != 4 * binomial(g, 4))
      throw GenericityError("reconstruct_g4: node " + std::to_string(i) + " lies on " +
                            std::to_string(signature[i]) +
                            " tangent hyperplanes (split curves give 4): hyperelliptic or degenerate input");

  std::array<std::array<M4, 2>, 2> cones;
  for (int j = 0; j < 2; ++j) {
    CMat m(1, g);
    m.row(0) = nodes[j].transpose();
    const CMat k = kernel_of(m, 3, "projection from a node");
    std::vector<V3> lines, images;
    for (const auto& h : planes)
      if (incidence_residual(h.covector, nodes[j]) <= tol.containment) lines.push_back(k.adjoint() * h.covector);
    for (int i = 0; i < g + 1; ++i)
      if (i != j) images.push_back(k.transpose() * nodes[i]);
    if (lines.size() != 4) throw GenericityError("reconstruct_g4: expected four tangent planes through a node");
    const ConicPair pair = reconstruct_g3(lines, images, tol);
    cones[j][0] = k * pair.first * k.transpose();
    cones[j][1] = k * pair.second * k.transpose();
  }

  const V4 n1 = nodes[0], n2 = nodes[1];
  double best_score = kInf;
  int best = -1;
  std::array<std::array<CMat, 2>, 2> frames;
  for (int pairing = 0; pairing < 2; ++pairing) {
    double score = 0.0;
    for (int c = 0; c < 2; ++c) {
      frames[pairing][c] = residual_cubic(cones[0][c], cones[1][pairing == 0 ? c : 1 - c], n1, n2);
      for (const auto& h : planes) score = std::max(score, cubic_discriminant(frames[pairing][c].transpose() * h.covector));
    }
    if (score < best_score) {
      best_score = score;
      best = pairing;
    }
  }
  if (best < 0) throw GenericityError("reconstruct_g4: no consistent pairing of the projected conics");

  G4Reconstruction r{
      ProjectiveSplitCurve{{RationalNormalCurve(frames[best][0]), RationalNormalCurve(frames[best][1])}, {}},
      nodes,
      {cones[0][0], cones[0][1]},
      {cones[1][best == 0 ? 0 : 1], cones[1][best == 0 ? 1 : 0]}};
  for (int c = 0; c < 2; ++c)
    for (const auto& n : nodes) r.curve.node_params[c].push_back(parameter_of(r.curve.components[c], n, tol.clustering));

  for (const auto& h : planes) {
    for (int c = 0; c < 2; ++c) {
      std::vector<cplx> through;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (incidence_residual(h.covector, nodes[i]) <= tol.containment) through.push_back(r.curve.node_params[c][i]);
      if (through.size() != 1) throw GenericityError("reconstruct_g4: tangent plane through an unexpected node count");
      const double res = tangency_residual(r.curve.components[c], h.covector, through);
      if (!(res <= tol.tangency)) {
        std::ostringstream o;
        o << "reconstruct_g4: recovered component " << c << " fails tangency (residual " << res << ")";
        throw GenericityError(o.str());
      }
    }
  }
  return r;
}

double curve_deviation(const RationalNormalCurve& truth, const RationalNormalCurve& candidate, int samples,
                       std::uint64_t seed) {
  if (truth.dim() != candidate.dim()) throw InputError("curve_deviation: dimension mismatch");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto lu = candidate.frame().fullPivLu();
  const int n = candidate.dim();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double re = u(rng), im = u(rng);
    const CVec p = truth.point(cplx(re, im));
    const CVec w = lu.solve(p);
    const cplx t = std::abs(w(0)) >= std::abs(w(n - 1)) ? w(1) / w(0) : w(n - 1) / w(n - 2);
    worst = std::max(worst, projective_distance(p, candidate.point(t)));
  }
  return worst;
}

}  // namespace splitcurve

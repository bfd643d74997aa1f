// Acceptance run: one PASS/FAIL line per criterion.
//
//   splitcurve_acceptance [--known-failures 1,4] [--only 3]
//
// Exit status is 0 iff the set of failing criteria equals the known-failure
// set (empty by default).

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "splitcurve/bundle.hpp"
#include "splitcurve/cli.hpp"
#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"
#include "splitcurve/git_stability.hpp"
#include "splitcurve/spin.hpp"
#include "splitcurve/split_geometry.hpp"
#include "splitcurve/stable_graph.hpp"
#include "splitcurve/verify.hpp"

using namespace splitcurve;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string str(const std::set<int>& s) {
  std::string out = "{";
  for (int x : s) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

void classification(Outcome& o) {
  for (int g = 3; g <= 5; ++g) {
    const auto t0 = std::chrono::steady_clock::now();
    const TheoremReport r = verify_split_classification(g);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int others = 0;
    for (auto c : r.survivor_classes) others += c == CurveClass::other;
    o.detail << "g=" << g << ": " << r.graphs_checked << " graphs, " << r.survivors.size() << " survivors ("
             << others << " non-split); ";
    o.require(r.holds, "g=" + std::to_string(g) + " survivors differ from the expected classes");
    if (g == 5) o.require(secs < 300.0, "g=5 took longer than 5 minutes");
  }
}

void degree_identities(Outcome& o) {
  std::size_t n = 0;
  for (int g = 2; g <= 5; ++g) {
    const VerifyReport r = verify_degree_identity(g);
    n += r.graphs_checked;
    o.require(r.passed(), "degree identity fails at g=" + std::to_string(g));
  }
  o.detail << n << " graphs";
}

void cycle_space(Outcome& o) {
  std::size_t n = 0;
  for (int g = 2; g <= 5; ++g)
    for (const auto& y : enumerate_stable_graphs(g)) {
      if (y.edge_count() > 12) continue;
      ++n;
      const auto a = admissible_sets(y);
      o.require(a.size() == static_cast<std::size_t>(pow2(betti_1(y))), "|A| != 2^b1");
      o.require(a == admissible_sets_bruteforce(y), "cycle space differs from brute force");
    }
  o.detail << n << " graphs with delta <= 12";
}

void split_exponents(Outcome& o) {
  for (int g = 3; g <= 12; ++g) {
    const ExponentSet e = exponent_set(split_graph(g));
    std::set<int> want;
    for (int k = g % 2 == 1 ? 0 : 1; k <= g - 1; k += 2) want.insert(k);
    want.insert(g);
    o.require(e.values == want, "E at g=" + std::to_string(g) + " is " + str(e.values));
    std::set<std::int64_t> l;
    for (int k : e.values)
      if (k != g) l.insert(pow2(k));
    o.require(multiplicity_set(split_graph(g)).values == l, "L at g=" + std::to_string(g));
  }
  o.detail << "g = 3..12";
}

void compact_and_stabilization(Outcome& o) {
  for (int g = 2; g <= 5; ++g) {
    o.require(verify_compact_type(g).passed(), "compact type at g=" + std::to_string(g));
    o.require(verify_stabilization(g, 100, kSeed + g).passed(), "stabilization at g=" + std::to_string(g));
  }
  o.detail << "g = 2..5, 100 destabilizations per genus";
}

void git(Outcome& o) {
  for (int g = 4; g <= 8; ++g) {
    const auto params = default_node_params(g + 1);
    const ExactConfiguration b = symbolic_type_b(g, params);
    const ExactConfiguration c = symbolic_type_c(g, params);
    for (int h = 0; h <= g - 2; ++h) {
      const auto cands = node_span_candidates(g, params, h);
      o.require(mu_bruteforce(b, cands, h) == mu_closed_form({ConfigKind::type_b, g, ConfigKind::type_b}, h),
                "kind b mu at g=" + std::to_string(g));
      o.require(mu_bruteforce(c, cands, h) == mu_closed_form({ConfigKind::type_c, g, ConfigKind::type_b}, h),
                "kind c mu at g=" + std::to_string(g));
    }
    for (ConfigSpec s : {ConfigSpec{ConfigKind::type_a, g, ConfigKind::type_b}, ConfigSpec{ConfigKind::type_b, g},
                         ConfigSpec{ConfigKind::type_c, g}, ConfigSpec{ConfigKind::combined, g, ConfigKind::type_a},
                         ConfigSpec{ConfigKind::combined, g, ConfigKind::type_b}})
      o.require(is_git_stable(s).stable, "stability of kind " + to_string(s.kind) + " at g=" + std::to_string(g));
    const Mu0Separation sep = mu0_separation(g);
    o.require(sep.strict_gap && sep.gap() == binomial(g, 3), "mu_0 gap at g=" + std::to_string(g));
  }
  o.detail << "g = 4..8";
}

std::vector<int> nodes_on(const CVec& h, const std::vector<CVec>& nodes, double tol) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (incidence_residual(h, nodes[i]) <= tol) out.push_back(i);
  return out;
}

void theta_hyperplanes(Outcome& o) {
  const Tolerances tol;
  double worst = 0.0;
  for (int g = 3; g <= 4; ++g)
    for (std::uint64_t seed = kSeed; seed < kSeed + 20; ++seed) {
      const ProjectiveSplitCurve x = random_split_curve(g, seed);
      const HyperplaneConfiguration c = theta_hat(x);
      const auto nodes = x.nodes();
      int ta = 0, tc = 0;
      for (const auto& e : c.entries) {
        const auto through = nodes_on(e.covector, nodes, tol.containment);
        o.require(static_cast<int>(through.size()) == e.type, "entry type does not match its node incidence");
        if (e.type == g - 3) {
          ++ta;
          for (int k = 0; k < 2; ++k) {
            std::vector<cplx> params;
            for (int i : through) params.push_back(x.node_params[k][i]);
            const double r = tangency_residual(x.components[k], e.covector, params);
            worst = std::max(worst, r);
            o.require(r < 1e-8, "tangency residual");
          }
        } else {
          ++tc;
        }
      }
      o.require(ta == (g == 3 ? 4 : 20) && tc == (g == 3 ? 6 : 10), "hyperplane counts");
      o.require(c.total_degree() == odd_theta_count(g), "total degree");
      const std::int64_t pa = mu_closed_form({ConfigKind::type_a, g, ConfigKind::type_b}, 0);
      const std::int64_t pc = mu_closed_form({ConfigKind::type_c, g, ConfigKind::type_b}, 0);
      for (int n : mu0_signature(c, nodes, g, tol.containment)) o.require(n == pa, "type g-3 incidence per node");
      for (int n : incidence_counts(c.with_multiplicity(pow2(g - 1)), nodes, tol.containment))
        o.require(n == pc, "type g-1 incidence per node");
    }
  o.detail << "40 curves, max tangency residual " << worst;
}

double best_deviation(const ProjectiveSplitCurve& t, const ProjectiveSplitCurve& r) {
  auto d = [&](int i, int j) { return curve_deviation(t.components[i], r.components[j], 50, kSeed); };
  return std::min(std::max(d(0, 0), d(1, 1)), std::max(d(0, 1), d(1, 0)));
}

double node_error(const std::vector<CVec>& got, const std::vector<CVec>& truth) {
  double worst = 0.0;
  for (const auto& p : got) {
    double best = 1.0;
    for (const auto& q : truth) best = std::min(best, projective_distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

void reconstruction(Outcome& o) {
  double worst_nodes = 0.0, worst_curve = 0.0, min_dist = 1.0;
  for (std::uint64_t seed = kSeed; seed < kSeed + 20; ++seed) {
    const ProjectiveSplitCurve x3 = random_split_curve(3, seed);
    const HyperplaneConfiguration c3 = theta_hat(x3);
    const auto n3 = recover_nodes(c3, 3);
    worst_nodes = std::max(worst_nodes, node_error(n3, x3.nodes()));
    std::vector<Eigen::Vector3cd> lines, pts(n3.begin(), n3.end());
    for (const auto& e : c3.with_multiplicity(1)) lines.push_back(e.covector);
    const ConicPair q = reconstruct_g3(lines, pts);
    const auto t0 = conic_of(x3.components[0]), t1 = conic_of(x3.components[1]);
    worst_curve = std::max(worst_curve, std::min(std::max(conic_distance(q.first, t0), conic_distance(q.second, t1)),
                                                 std::max(conic_distance(q.first, t1), conic_distance(q.second, t0))));

    const ProjectiveSplitCurve x4 = random_split_curve(4, seed);
    const G4Reconstruction r4 = reconstruct_g4(theta_hat(x4));
    worst_nodes = std::max(worst_nodes, node_error(r4.nodes, x4.nodes()));
    worst_curve = std::max(worst_curve, best_deviation(x4, r4.curve));

    for (int g = 3; g <= 4; ++g)
      min_dist = std::min(min_dist, configuration_distance(theta_hat(random_split_curve(g, seed)),
                                                           theta_hat(random_split_curve(g, seed + 1000))));
  }
  o.require(worst_nodes < 1e-6, "node recovery error");
  o.require(worst_curve < 1e-6, "component residual");
  o.require(min_dist > 1e-3, "distinct curves have close configurations");

  const HyperplaneConfiguration h = theta_hat_hyperelliptic(4, {0.0, 1.0, -1.0, 2.0, cplx(0.5, 1.0)});
  bool rejected = false;
  try {
    reconstruct_g4(h);
  } catch (const GenericityError&) {
    rejected = true;
  }
  const auto sig = mu0_signature(h, recover_nodes(h, 4), 4, Tolerances{}.containment);
  o.require(rejected && sig.front() == 4 + binomial(4, 3), "hyperelliptic configuration accepted");
  o.detail << "node error " << worst_nodes << ", component residual " << worst_curve << ", min pair distance "
           << min_dist;
}

void bundles(Outcome& o) {
  const VanishingCertificate c4 = vanishing_certificate(4);
  o.require(c4.twisted_splitting == std::vector<std::int64_t>{-5, -5} && c4.valid(), "g=4 splitting");
  for (int g = 5; g <= 50; ++g) {
    const VanishingCertificate c = vanishing_certificate(g);
    o.require(c.a < -(g + 1) && c.valid(), "negativity at g=" + std::to_string(g));
  }
  o.require(fiber_identity_holds_symbolically(), "symbolic fiber identity");
  for (std::int64_t x = 1; x <= 16; ++x) {
    const std::int64_t g = 3 * x + 2;
    o.require(binomial(g, 3) == x + (g - 2) * 3 * x * (x + 1) / 2, "fiber identity at x=" + std::to_string(x));
  }
  o.detail << "g = 4..50, x = 1..16";
}

void order(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  auto random_set = [&] {
    std::set<int> s;
    const int n = std::uniform_int_distribution<int>(0, 6)(rng);
    while (static_cast<int>(s.size()) < n) s.insert(std::uniform_int_distribution<int>(0, 8)(rng));
    return s;
  };
  int antisym_cases = 0, trans_cases = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto a = random_set(), b = random_set(), c = random_set();
    o.require(dominates(a, a), "reflexivity");
    o.require(dominates(a, b) == dominates_bruteforce(a, b), "agreement with brute force");
    if (dominates(a, b) && dominates(b, a)) {
      ++antisym_cases;
      o.require(a == b, "antisymmetry");
    }
    if (dominates(a, b) && dominates(b, c)) {
      ++trans_cases;
      o.require(dominates(a, c), "transitivity");
    }
  }
  o.detail << "1000 triples, " << trans_cases << " transitivity and " << antisym_cases << " antisymmetry instances";
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known, only;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const auto values = cli::parse_int_list(argv[i + 1]);
    if (flag == "--known-failures") known.insert(values.begin(), values.end());
    else if (flag == "--only") only.insert(values.begin(), values.end());
    else {
      std::cerr << "unknown flag " << flag << "\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"classification predicate selects split (and polygonal at g=3)", classification},
      {"degree identities", degree_identities},
      {"cycle-space admissibility", cycle_space},
      {"split exponent and multiplicity sets", split_exponents},
      {"compact type and stabilization invariance", compact_and_stabilization},
      {"GIT closed forms, stability and mu_0 gap", git},
      {"numeric theta-hyperplanes", theta_hyperplanes},
      {"reconstruction and uniqueness", reconstruction},
      {"normal-bundle certificates", bundles},
      {"domination order properties", order},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first << " [" << o.detail.str()
              << "] (" << std::fixed << std::setprecision(2) << secs << "s)" << (known.count(id) ? " known" : "")
              << std::endl;
  }
  std::set<int> expected;
  for (int k : known)
    if (only.empty() || only.count(k)) expected.insert(k);
  if (failed != expected) {
    std::cout << "failing " << str(failed) << ", expected " << str(expected) << "\n";
    return 1;
  }
  return 0;
}

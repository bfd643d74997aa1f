#include "splitcurve/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "splitcurve/bundle.hpp"
#include "splitcurve/combinatorics.hpp"
#include "splitcurve/error.hpp"
#include "splitcurve/git_stability.hpp"
#include "splitcurve/parallel.hpp"
#include "splitcurve/spin.hpp"
#include "splitcurve/split_geometry.hpp"
#include "splitcurve/verify.hpp"

namespace splitcurve::cli {

using nlohmann::json;

std::pair<int, int> parse_genus_range(const std::string& s) {
  auto to_int = [&](const std::string& x) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(x, &pos);
    } catch (...) {
      throw InputError("bad genus '" + s + "'");
    }
    if (pos != x.size()) throw InputError("bad genus '" + s + "'");
    return v;
  };
  std::size_t sep = s.find("..");
  std::size_t width = 2;
  if (sep == std::string::npos) {
    sep = s.find('-', 1);
    width = 1;
  }
  if (sep == std::string::npos) {
    const int g = to_int(s);
    return {g, g};
  }
  const int lo = to_int(s.substr(0, sep)), hi = to_int(s.substr(sep + width));
  if (lo > hi) throw InputError("empty genus range '" + s + "'");
  return {lo, hi};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    try {
      out.push_back(std::stoi(item, &pos));
    } catch (...) {
      throw InputError("bad integer list '" + s + "'");
    }
    if (pos != item.size()) throw InputError("bad integer list '" + s + "'");
  }
  return out;
}

namespace {

struct RunConfig {
  std::string genus = "4";
  std::uint64_t seed = 20240601;
  Tolerances tol;
  std::string in_path;
  std::string out_path;
  std::string format = "json";
};

json read_json_file(const std::string& path) {
  if (path.empty()) throw InputError("--in is required");
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

json complex_array(const CVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    a.push_back(v(i).real());
    a.push_back(v(i).imag());
  }
  return a;
}

json complex_array(const std::vector<cplx>& v) {
  return complex_array(CVec(Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size()))));
}

json matrix_rows(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(complex_array(CVec(m.row(r).transpose())));
  return rows;
}

template <typename T>
json set_json(const std::set<T>& s) {
  return json(std::vector<T>(s.begin(), s.end()));
}

json graph_record(const StableGraph& g, bool with_sets) {
  const ExponentSet e = exponent_set(g);
  const auto sets = admissible_sets(g);
  const DegreeSums d = degree_sums(g);
  const int genus = arithmetic_genus(g);
  json r{{"canonical_key", canonical_form(g).to_string()},
         {"graph", g.to_json()},
         {"genus", genus},
         {"E", set_json(e.values)},
         {"L", set_json(multiplicity_set(g).values)},
         {"admissible_count", sets.size()},
         {"degree_identity", d.odd == odd_theta_count(genus) && d.total == pow2(2 * genus)},
         {"classification", classification_predicate(g)},
         {"class", to_string(classify(g))}};
  if (with_sets) {
    json arr = json::array();
    for (const NodeSet& s : sets) {
      const SpinSupportReport rep = spin_counts(g, s);
      arr.push_back({{"nodes", s.members()},
                     {"exponent", rep.exponent},
                     {"n_total", rep.n_total},
                     {"n_odd", rep.n_odd},
                     {"multiplicity", rep.multiplicity}});
    }
    r["admissible_sets"] = arr;
  }
  return r;
}

int cmd_enumerate(const RunConfig& rc, std::ostream& out) {
  const auto [lo, hi] = parse_genus_range(rc.genus);
  json all = json::array();
  bool ok = true;
  for (int g = lo; g <= hi; ++g) {
    const auto graphs = enumerate_stable_graphs(g);
    std::vector<json> records(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) { records[i] = graph_record(graphs[i], false); });
    for (const auto& r : records) ok = ok && r["degree_identity"].get<bool>();
    all.push_back({{"g", g}, {"count", graphs.size()}, {"graphs", records}});
  }
  Output o(rc.out_path, out);
  o.get() << (lo == hi ? all[0] : all).dump(2) << "\n";
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_exponents(const RunConfig& rc, std::ostream& out) {
  const StableGraph g = StableGraph::from_json(read_json_file(rc.in_path));
  const json r = graph_record(g, true);
  Output o(rc.out_path, out);
  o.get() << r.dump(2) << "\n";
  return r["degree_identity"].get<bool>() ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const RunConfig& rc, const std::string& suite, std::ostream& out) {
  const auto [lo, hi] = parse_genus_range(rc.genus);
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = suite_ids();
  } else {
    if (std::find(suite_ids().begin(), suite_ids().end(), suite) == suite_ids().end())
      throw InputError("unknown suite '" + suite + "'");
    suites = {suite};
  }
  json all = json::array();
  bool ok = true;
  for (const auto& s : suites)
    for (int g = lo; g <= hi; ++g) {
      const VerifyReport rep = run_suite(s, g, rc.seed);
      ok = ok && rep.passed();
      all.push_back(rep.to_json());
    }
  Output o(rc.out_path, out);
  o.get() << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
  return ok ? kExitOk : kExitVerificationFailed;
}

constexpr const char* kGitSchema =
    "column,type,meaning\n"
    "g,int,genus; the configuration lives in P^(g-1)\n"
    "h,int,dimension of the linear subspaces tested (0..g-2)\n"
    "mu,int,largest total multiplicity of hyperplanes containing one h-plane\n"
    "max_num,int,numerator of m(g-1-h)/g in lowest terms (m = degree)\n"
    "max_den,int,denominator of m(g-1-h)/g in lowest terms\n"
    "stable,bool,true iff mu < max_num/max_den\n";

int cmd_git_check(const RunConfig& rc, const std::string& kind, const std::string& base, bool schema,
                  bool bruteforce, std::ostream& out, std::ostream& err) {
  if (schema) {
    out << kGitSchema;
    return kExitOk;
  }
  const auto [lo, hi] = parse_genus_range(rc.genus);
  const ConfigKind k = config_kind_from_string(kind);
  const ConfigKind b = config_kind_from_string(base);
  if (bruteforce && k != ConfigKind::type_b && k != ConfigKind::type_c)
    throw InputError("--bruteforce is available for kinds b and c");
  bool ok = true;
  json rows = json::array();
  std::ostringstream csv;
  csv << "g,h,mu,max_num,max_den,stable\n";
  for (int g = lo; g <= hi; ++g) {
    const ConfigSpec spec{k, g, b};
    const MuProfile p = is_git_stable(spec);
    ok = ok && p.stable;
    ExactConfiguration sym;
    if (bruteforce) {
      const auto params = default_node_params(g + 1);
      sym = k == ConfigKind::type_b ? symbolic_type_b(g, params) : symbolic_type_c(g, params);
    }
    for (const MuEntry& e : p.entries) {
      csv << g << "," << e.h << "," << e.mu << "," << e.max.numerator() << "," << e.max.denominator() << ","
          << (e.stable() ? "true" : "false") << "\n";
      rows.push_back({{"g", g},
                      {"h", e.h},
                      {"mu", e.mu},
                      {"max_num", e.max.numerator()},
                      {"max_den", e.max.denominator()},
                      {"stable", e.stable()}});
      if (bruteforce) {
        const auto cands = node_span_candidates(g, default_node_params(g + 1), e.h);
        const std::int64_t bf = mu_bruteforce(sym, cands, e.h);
        if (bf != e.mu) {
          ok = false;
          err << json{{"statement", "mu closed form"}, {"g", g}, {"h", e.h}, {"closed_form", e.mu}, {"bruteforce", bf}}
                     .dump()
              << "\n";
        }
      }
    }
  }
  Output o(rc.out_path, out);
  if (rc.format == "csv")
    o.get() << csv.str();
  else
    o.get() << rows.dump(2) << "\n";
  return ok ? kExitOk : kExitVerificationFailed;
}

void check_theta_genus(int g) {
  if (g < 3 || g > 7) throw InputError("theta computations support genus 3..7");
}

int cmd_theta_compute(const RunConfig& rc, const std::string& which, std::ostream& out) {
  const int g = parse_genus_range(rc.genus).first;
  check_theta_genus(g);
  const ProjectiveSplitCurve x = random_split_curve(g, rc.seed, rc.tol);
  HyperplaneConfiguration c;
  if (which == "hat")
    c = theta_hat(x, rc.tol);
  else if (which == "g3")
    c = theta_type_g3(x, rc.tol);
  else if (which == "g1")
    c = theta_type_g1(x, rc.tol);
  else
    throw InputError("unknown --which '" + which + "' (hat, g3, g1)");
  json j = c.to_json();
  j["seed"] = rc.seed;
  j["curve"] = {{"t", complex_array(x.node_params[0])}, {"s", complex_array(x.node_params[1])}};
  Output o(rc.out_path, out);
  o.get() << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_theta_hyperelliptic(const RunConfig& rc, const std::string& params, std::ostream& out) {
  const int g = parse_genus_range(rc.genus).first;
  check_theta_genus(g);
  std::vector<cplx> p;
  if (!params.empty()) {
    std::stringstream in(params);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        p.emplace_back(std::stod(item), 0.0);
      } catch (...) {
        throw InputError("bad parameter list '" + params + "'");
      }
    }
  } else {
    std::mt19937_64 rng(rc.seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    while (static_cast<int>(p.size()) < g + 1) {
      const double t = u(rng);
      if (std::all_of(p.begin(), p.end(), [&](cplx q) { return std::abs(q.real() - t) > 0.2; })) p.emplace_back(t, 0.0);
    }
  }
  json j = theta_hat_hyperelliptic(g, p, rc.tol).to_json();
  j["params"] = complex_array(p);
  Output o(rc.out_path, out);
  o.get() << j.dump(2) << "\n";
  return kExitOk;
}

HyperplaneConfiguration load_config(const RunConfig& rc, int* genus) {
  const HyperplaneConfiguration c = HyperplaneConfiguration::from_json(read_json_file(rc.in_path));
  if (*genus == 0) *genus = c.dim;
  if (c.dim != *genus) throw InputError("configuration lives in P^" + std::to_string(c.dim - 1) + ", not genus " +
                                        std::to_string(*genus));
  check_theta_genus(*genus);
  return c;
}

int cmd_recover_nodes(const RunConfig& rc, int genus, std::ostream& out) {
  const HyperplaneConfiguration c = load_config(rc, &genus);
  json nodes = json::array();
  for (const auto& n : recover_nodes(c, genus, rc.tol)) nodes.push_back(complex_array(n));
  Output o(rc.out_path, out);
  o.get() << json{{"g", genus}, {"nodes", nodes}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_reconstruct(const RunConfig& rc, int genus, std::ostream& out) {
  const HyperplaneConfiguration c = load_config(rc, &genus);
  json j{{"g", genus}};
  if (genus == 3) {
    const auto nodes = recover_nodes(c, 3, rc.tol);
    std::vector<Eigen::Vector3cd> pts(nodes.begin(), nodes.end()), lines;
    for (const auto& e : c.with_multiplicity(1)) lines.emplace_back(e.covector);
    const ConicPair pair = reconstruct_g3(lines, pts, rc.tol);
    json n = json::array();
    for (const auto& p : nodes) n.push_back(complex_array(p));
    j["nodes"] = n;
    j["conics"] = {matrix_rows(pair.first), matrix_rows(pair.second)};
  } else if (genus == 4) {
    const G4Reconstruction r = reconstruct_g4(c, rc.tol);
    json n = json::array();
    for (const auto& p : r.nodes) n.push_back(complex_array(p));
    j["nodes"] = n;
    json comps = json::array();
    for (int k = 0; k < 2; ++k)
      comps.push_back({{"frame", matrix_rows(r.curve.components[k].frame())},
                       {"node_params", complex_array(r.curve.node_params[k])},
                       {"condition", r.curve.components[k].condition_number()}});
    j["components"] = comps;
  } else {
    throw InputError("reconstruction is implemented for genus 3 and 4");
  }
  Output o(rc.out_path, out);
  o.get() << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_normalbundle_cert(const RunConfig& rc, int g_min, int g_max, std::ostream& out) {
  if (g_min < 4 || g_max < g_min || g_max > 1000) throw InputError("need 4 <= g-min <= g-max <= 1000");
  json arr = json::array();
  bool ok = fiber_identity_holds_symbolically();
  for (int g = g_min; g <= g_max; ++g) {
    const VanishingCertificate c = vanishing_certificate(g);
    ok = ok && c.valid();
    arr.push_back(c.to_json());
  }
  Output o(rc.out_path, out);
  o.get() << arr.dump(2) << "\n";
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_dominates(const RunConfig& rc, const std::string& l, const std::string& m, std::ostream& out) {
  const auto lv = parse_int_list(l), mv = parse_int_list(m);
  const bool d = dominates(std::set<int>(lv.begin(), lv.end()), std::set<int>(mv.begin(), mv.end()));
  Output o(rc.out_path, out);
  o.get() << (d ? "true" : "false") << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-curve combinatorics, theta-configurations and split curves"};
  app.name("splitcurve");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  app.add_option("--seed", rc.seed, "random seed")->capture_default_str();
  app.add_option("--out", rc.out_path, "output file (default stdout)");
  app.add_option("--tol-containment", rc.tol.containment)->capture_default_str();
  app.add_option("--tol-tangency", rc.tol.tangency)->capture_default_str();
  app.add_option("--tol-clustering", rc.tol.clustering)->capture_default_str();
  app.add_option("--tol-uniqueness", rc.tol.uniqueness)->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "stable dual graphs of a genus, with spin data");
  enumerate->add_option("--g", rc.genus, "genus or range a..b")->required();

  auto* exponents = app.add_subcommand("exponents", "E, L and admissible sets of one graph");
  exponents->add_option("--in", rc.in_path, "graph JSON")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite over all graphs of a genus");
  auto* suite_opt = verify->add_option("--suite,--theorem,--lemma", suite, "3.2.1 3.2.2 3.3.1 3.3.2 3.4.1 degree-identity or all");
  suite_opt->required();
  verify->add_option("--g", rc.genus, "genus or range a..b")->required();

  std::string kind = "b", base = "b";
  bool schema = false, bruteforce = false;
  auto* git = app.add_subcommand("git-check", "GIT stability table of a theta-configuration");
  git->add_option("--g", rc.genus, "genus or range a..b");
  git->add_option("--kind", kind, "a, b, c or combined")->capture_default_str();
  git->add_option("--base", base, "base kind of a combined configuration")->capture_default_str();
  git->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  git->add_flag("--schema", schema, "describe the CSV columns");
  git->add_flag("--bruteforce", bruteforce, "also count incidences on a symbolic configuration");

  std::string which = "hat";
  auto* theta = app.add_subcommand("theta-compute", "theta-hyperplanes of a seeded random split curve");
  theta->add_option("--g", rc.genus)->required();
  theta->add_option("--which", which, "hat, g3 or g1")->capture_default_str();

  std::string params;
  auto* hyper = app.add_subcommand("theta-hat-hyperelliptic", "degenerate configuration of a hyperelliptic split curve");
  hyper->add_option("--g", rc.genus)->required();
  hyper->add_option("--params", params, "comma-separated real node parameters");

  int cfg_genus = 0;
  auto* recover = app.add_subcommand("recover-nodes", "nodes from a configuration");
  recover->add_option("--in", rc.in_path)->required();
  recover->add_option("--g", cfg_genus);

  auto* reconstruct = app.add_subcommand("reconstruct", "split curve from its configuration (g = 3, 4)");
  reconstruct->add_option("--in", rc.in_path)->required();
  reconstruct->add_option("--g", cfg_genus);

  int g_min = 4, g_max = 50;
  auto* cert = app.add_subcommand("normalbundle-cert", "degree certificates for the normal-bundle vanishing");
  cert->add_option("--g-min", g_min)->capture_default_str();
  cert->add_option("--g-max", g_max)->capture_default_str();

  std::string l_list, m_list;
  auto* dom = app.add_subcommand("dominates", "is there a surjection L -> M with a(l) >= l?");
  dom->add_option("--l", l_list)->required();
  dom->add_option("--m", m_list)->required();

  // CLI11 parses the reversed argument list.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    rc.tol.validate();
    if (*enumerate) return cmd_enumerate(rc, out);
    if (*exponents) return cmd_exponents(rc, out);
    if (*verify) return cmd_verify(rc, suite, out);
    if (*git) {
      if (rc.format == "json" && !git->count("--format")) rc.format = "csv";
      if (!schema && !git->count("--g")) throw InputError("--g is required");
      return cmd_git_check(rc, kind, base, schema, bruteforce, out, err);
    }
    if (*theta) return cmd_theta_compute(rc, which, out);
    if (*hyper) return cmd_theta_hyperelliptic(rc, params, out);
    if (*recover) return cmd_recover_nodes(rc, cfg_genus, out);
    if (*reconstruct) return cmd_reconstruct(rc, cfg_genus, out);
    if (*cert) return cmd_normalbundle_cert(rc, g_min, g_max, out);
    if (*dom) return cmd_dominates(rc, l_list, m_list, out);
  } catch (const InputError& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return kExitInputError;
  } catch (const GenericityError& e) {
    err << json{{"error", "verification"}, {"message", e.what()}}.dump() << "\n";
    return kExitVerificationFailed;
  } catch (const json::exception& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace splitcurve::cli

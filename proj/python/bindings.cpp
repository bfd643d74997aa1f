#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitcurve/bundle.hpp"
#include "splitcurve/cli.hpp"
#include "splitcurve/error.hpp"
#include "splitcurve/git_stability.hpp"
#include "splitcurve/spin.hpp"
#include "splitcurve/split_geometry.hpp"
#include "splitcurve/stable_graph.hpp"

namespace py = pybind11;
using namespace splitcurve;

namespace {

StableGraph graph_from(const std::string& s) {
  try {
    return StableGraph::from_json(nlohmann::json::parse(s));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed graph JSON: ") + e.what());
  }
}

HyperplaneConfiguration config_from(const std::string& s) {
  try {
    return HyperplaneConfiguration::from_json(nlohmann::json::parse(s));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed configuration JSON: ") + e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_splitcurve, m) {
  m.doc() = "splitcurve core; graphs and configurations cross the boundary as JSON strings";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<GenericityError>(m, "GenericityError", PyExc_RuntimeError);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

  m.def("enumerate_stable_graphs", [](int g) {
    std::vector<std::string> out;
    for (const auto& x : enumerate_stable_graphs(g)) out.push_back(x.to_json().dump());
    return out;
  });
  m.def("canonical_key", [](const std::string& g) { return canonical_form(graph_from(g)).to_string(); });
  m.def("exponent_set", [](const std::string& g) { return exponent_set(graph_from(g)).values; });
  m.def("multiplicity_set", [](const std::string& g) { return multiplicity_set(graph_from(g)).values; });
  m.def("admissible_sets", [](const std::string& g) {
    std::vector<std::vector<int>> out;
    for (const auto& s : admissible_sets(graph_from(g))) out.push_back(s.members());
    return out;
  });
  m.def("degree_sums", [](const std::string& g) {
    const DegreeSums d = degree_sums(graph_from(g));
    return py::make_tuple(d.odd, d.total);
  });
  m.def("classify", [](const std::string& g) { return to_string(classify(graph_from(g))); });
  m.def("split_exponent_set", [](int g) { return split_exponent_set_closed_form(g).values; });
  m.def("dominates", [](const std::set<int>& l, const std::set<int>& mm) { return dominates(l, mm); });

  m.def("mu_closed_form", [](const std::string& kind, int g, int h, const std::string& base) {
    return mu_closed_form({config_kind_from_string(kind), g, config_kind_from_string(base)}, h);
  }, py::arg("kind"), py::arg("g"), py::arg("h"), py::arg("base") = "b");
  m.def("is_git_stable", [](const std::string& kind, int g, const std::string& base) {
    return is_git_stable({config_kind_from_string(kind), g, config_kind_from_string(base)}).stable;
  }, py::arg("kind"), py::arg("g"), py::arg("base") = "b");

  m.def("theta_hat", [](int g, std::uint64_t seed) { return theta_hat(random_split_curve(g, seed)).to_json().dump(); });
  m.def("configuration_distance", [](const std::string& a, const std::string& b) {
    return configuration_distance(config_from(a), config_from(b));
  });
  m.def("vanishing_certificate", [](int g) { return vanishing_certificate(g).to_json().dump(); });
}

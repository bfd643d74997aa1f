#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "splitcurve/cli.hpp"
#include "splitcurve/error.hpp"

using namespace splitcurve;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("splitcurve_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kK4 = R"({"genus_labels":[0,0,0,0],"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]})";

}  // namespace

TEST_CASE("argument helpers") {
  CHECK(cli::parse_genus_range("4") == std::pair{4, 4});
  CHECK(cli::parse_genus_range("4..8") == std::pair{4, 8});
  CHECK(cli::parse_genus_range("4-8") == std::pair{4, 8});
  CHECK_THROWS_AS(cli::parse_genus_range("8..4"), InputError);
  CHECK_THROWS_AS(cli::parse_genus_range("x"), InputError);
  CHECK(cli::parse_int_list("1,4,2") == std::vector<int>{1, 4, 2});
  CHECK(cli::parse_int_list("").empty());
  CHECK_THROWS_AS(cli::parse_int_list("1,x"), InputError);
  CHECK_THROWS_AS(cli::parse_int_list("3.5"), InputError);
}

TEST_CASE("exponents of the polygonal curve") {
  const Result r = run({"exponents", "--in", write_temp("k4.json", kK4)});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["E"] == json::array({2, 3}));
  CHECK(j["L"] == json::array({4}));
  CHECK(j["admissible_count"] == 8);
}

TEST_CASE("dominates answers the query with exit 0") {
  Result r = run({"dominates", "--l", "1,4", "--m", "1,2,4"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "false\n");
  r = run({"dominates", "--l", "1,2,4", "--m", "1,4"});
  CHECK(r.out == "true\n");
}

TEST_CASE("verify suites") {
  for (const std::string s : {"3.2.1", "3.2.2", "3.3.1", "3.3.2", "degree-identity"}) {
    const Result r = run({"verify", "--suite", s, "--g", "3..4"});
    CHECK_MESSAGE(r.code == cli::kExitOk, s);
  }
  Result r = run({"verify", "--theorem", "3.4.1", "--g", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["summary"]["survivors"].size() == 2);
  // K_{3,3} satisfies the predicate at genus 4; the failure record carries the graph.
  r = run({"verify", "--theorem", "3.4.1", "--g", "4"});
  CHECK(r.code == cli::kExitVerificationFailed);
  const json j = json::parse(r.out);
  REQUIRE(j["failures"].size() == 1);
  CHECK(j["failures"][0]["statement"] == "3.4.1");
  CHECK(j["failures"][0]["graph"]["edges"].size() == 9);
  CHECK(run({"verify", "--suite", "9.9.9", "--g", "3"}).code == cli::kExitInputError);
}

TEST_CASE("input errors exit 2") {
  CHECK(run({}).code == cli::kExitInputError);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  CHECK(run({"enumerate", "--g", "x"}).code == cli::kExitInputError);
  CHECK(run({"enumerate", "--g", "1"}).code == cli::kExitInputError);
  CHECK(run({"enumerate", "--g", "9"}).code == cli::kExitInputError);
  CHECK(run({"exponents", "--in", write_temp("bad.json", "{not json")}).code == cli::kExitInputError);
  CHECK(run({"exponents", "--in", write_temp("unstable.json", R"({"genus_labels":[0],"edges":[[0,0]]})")}).code ==
        cli::kExitInputError);
  CHECK(run({"exponents", "--in", "/nonexistent/graph.json"}).code == cli::kExitInputError);
  CHECK(run({"git-check", "--g", "4", "--kind", "z"}).code == cli::kExitInputError);
  CHECK(run({"theta-compute", "--g", "2"}).code == cli::kExitInputError);
  CHECK(run({"theta-compute", "--g", "4", "--tol-tangency", "-1"}).code == cli::kExitInputError);
  const Result r = run({"enumerate", "--g", "x"});
  CHECK(json::parse(r.err)["error"] == "input");
}

TEST_CASE("git-check csv and schema") {
  Result r = run({"git-check", "--g", "4", "--kind", "b"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out == "g,h,mu,max_num,max_den,stable\n4,0,8,15,1,true\n4,1,2,10,1,true\n4,2,0,5,1,true\n");
  r = run({"git-check", "--schema"});
  CHECK(r.code == cli::kExitOk);
  for (const char* col : {"g,", "h,", "mu,", "max_num,", "max_den,", "stable,"}) CHECK(r.out.find(col) != std::string::npos);
  r = run({"git-check", "--g", "4..6", "--kind", "combined", "--base", "a"});
  CHECK(r.code == cli::kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 3 + 4 + 5);
  r = run({"git-check", "--g", "4..5", "--kind", "c", "--bruteforce"});
  CHECK(r.code == cli::kExitOk);
}

TEST_CASE("theta pipeline through files") {
  Result t = run({"theta-compute", "--g", "4", "--seed", "11"});
  REQUIRE(t.code == cli::kExitOk);
  const json conf = json::parse(t.out);
  CHECK(conf["degree"] == 120);
  CHECK(conf["entries"].size() == 30);
  const std::string path = write_temp("theta4.json", t.out);
  Result n = run({"recover-nodes", "--in", path});
  CHECK(n.code == cli::kExitOk);
  CHECK(json::parse(n.out)["nodes"].size() == 5);
  Result rc = run({"reconstruct", "--in", path});
  CHECK(rc.code == cli::kExitOk);
  CHECK(json::parse(rc.out)["components"].size() == 2);

  Result h = run({"theta-hat-hyperelliptic", "--g", "4", "--params", "0,1,-1,2,3"});
  REQUIRE(h.code == cli::kExitOk);
  Result hr = run({"reconstruct", "--in", write_temp("hyper4.json", h.out)});
  CHECK(hr.code == cli::kExitVerificationFailed);
  CHECK(json::parse(hr.err)["error"] == "verification");

  Result g3 = run({"theta-compute", "--g", "3", "--seed", "2"});
  Result c3 = run({"reconstruct", "--in", write_temp("theta3.json", g3.out)});
  CHECK(c3.code == cli::kExitOk);
  CHECK(json::parse(c3.out)["conics"].size() == 2);
}

TEST_CASE("normalbundle-cert") {
  const Result r = run({"normalbundle-cert", "--g-min", "4", "--g-max", "50"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j.size() == 47);
  CHECK(j[0]["twisted_splitting"] == json::array({-5, -5}));
  for (const auto& c : j) CHECK(c["valid"] == true);
  CHECK(run({"normalbundle-cert", "--g-min", "3", "--g-max", "5"}).code == cli::kExitInputError);
}

TEST_CASE("identical runs give byte-identical output") {
  const std::vector<std::vector<std::string>> cmds{
      {"enumerate", "--g", "4"},
      {"theta-compute", "--g", "5", "--seed", "42"},
      {"verify", "--suite", "3.3.2", "--g", "4", "--seed", "9"},
      {"git-check", "--g", "4..8", "--kind", "combined"},
  };
  for (const auto& c : cmds) {
    const Result a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  CHECK(run({"theta-compute", "--g", "4", "--seed", "1"}).out != run({"theta-compute", "--g", "4", "--seed", "2"}).out);
}

TEST_CASE("thread count does not change output") {
  const std::vector<std::vector<std::string>> cmds{
      {"enumerate", "--g", "4"},
      {"theta-compute", "--g", "5", "--seed", "3"},
      {"verify", "--suite", "all", "--g", "3"},
  };
  for (const auto& c : cmds) {
    ::setenv("SPLITCURVE_THREADS", "1", 1);
    const Result one = run(c);
    ::setenv("SPLITCURVE_THREADS", "4", 1);
    const Result four = run(c);
    ::unsetenv("SPLITCURVE_THREADS");
    CHECK(one.out == four.out);
  }
}

TEST_CASE("enumerate output is sorted by canonical key") {
  const Result r = run({"enumerate", "--g", "3"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  const json& graphs = j.is_array() ? j : j["graphs"];
  REQUIRE(graphs.size() == 42);
  for (std::size_t i = 1; i < graphs.size(); ++i)
    CHECK(graphs[i - 1]["canonical_key"].get<std::string>() < graphs[i]["canonical_key"].get<std::string>());
}

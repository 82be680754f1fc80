#include "maxbell/cli.hpp"
#include "maxbell/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace maxbell;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "maxbell");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("maxbell_test_" + name);
}

}  // namespace

TEST_CASE("bellman command") {
  const Result a = cli({"bellman", "1", "1", "2"});
  CHECK(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["beta"] == 0.0);
  CHECK(ja["bellman"] == 1.0);

  const Result b = cli({"bellman", "1", "1.333333333333", "2"});
  CHECK(b.code == 0);
  const json jb = json::parse(b.out);
  CHECK(jb["beta"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(jb["bellman"].get<double>() == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(jb["omega"].get<double>() == doctest::Approx(1.5).epsilon(1e-9));

  const Result flags = cli({"bellman", "--f", "1", "--F", "1.333333333333", "--p", "2", "--format", "csv"});
  CHECK(flags.code == 0);
  CHECK(flags.out.rfind("f,F,p,beta,omega,bellman\n", 0) == 0);
}

TEST_CASE("invalid configurations exit with 2 and name the constraint") {
  const Result a = cli({"bellman", "2", "1", "2"});
  CHECK(a.code == 2);
  CHECK(a.err.find("requires f^p <= F") != std::string::npos);
  const Result b = cli({"verify", "--p", "2", "--q", "3"});
  CHECK(b.code == 2);
  CHECK(b.err.find("q must lie in [1,p]") != std::string::npos);
  CHECK(cli({"bellman", "1", "2"}).code == 2);
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"sweep", "--format", "xml"}).code == 2);
  CHECK(cli({"extremal", "--arity", "1"}).code == 2);
  CHECK(cli({"verify", "--input", "/nonexistent.json"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("verify on a given function") {
  const auto path = temp_file("phi.json");
  {
    std::ofstream f(path);
    f << R"({"arity":2,"depth":1,"values":[2,0]})";
  }
  const Result r = cli({"verify", "--input", path.string(), "--p", "2", "--q", "1", "--beta", "1"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  const auto& first = j["reports"][0]["report"];
  CHECK(first["name"] == "ineq_18");
  CHECK(first["gap"].get<double>() == doctest::Approx(0.5));

  const Result s = cli({"stability", "--input", path.string(), "--format", "json"});
  CHECK(s.code == 0);
  const json js = json::parse(s.out);
  CHECK(js["linearization"]["support"] == json::array({"", "0"}));
  std::filesystem::remove(path);
}

TEST_CASE("outputs are deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "--seed", "9", "--samples", "5", "--arity", "3", "--depth", "3"},
        std::vector<std::string>{"extremal", "--depth", "12"}, std::vector<std::string>{"sweep", "--p", "3", "--q", "1.5"},
        std::vector<std::string>{"selftest", "--seed", "3", "--samples", "50"},
        std::vector<std::string>{"stability", "--depth", "10", "--format", "json"}}) {
    const Result a = cli(args);
    const Result b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  CHECK(cli({"verify", "--seed", "1"}).out != cli({"verify", "--seed", "2"}).out);
}

TEST_CASE("sweep and extremal emit the documented CSV headers") {
  CHECK(cli({"sweep"}).out.rfind("alpha,G,limit,abs_err\n", 0) == 0);
  CHECK(cli({"sweep", "--kind", "beta", "--q", "1.5"}).out.rfind("beta,J,expected,abs_err\n", 0) == 0);
  const Result e = cli({"extremal", "--depth", "8"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("step,arity,depth,f,F_measured,maximal_p_integral,bellman_target,gap18,gap41,stability,A_q,"
                    "q_measured,q_predicted\n",
                    0) == 0);
  const Result j = cli({"extremal", "--depth", "8", "--format", "json"});
  CHECK(json::parse(j.out).size() == 4);
  const Result st = cli({"stability", "--depth", "8"});
  CHECK(st.out.rfind("step,arity,depth,beta,gap41,stability,max_slack\n", 0) == 0);
}

TEST_CASE("--out writes the artifact to a file") {
  const auto path = temp_file("sweep.csv");
  const Result r = cli({"sweep", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == cli({"sweep"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("config file supplies flags, command line overrides") {
  const auto path = temp_file("config.toml");
  {
    std::ofstream f(path);
    f << "p = 3\nq = 1.5\nformat = \"json\"\n";
  }
  const Result a = cli({"sweep", "--config", path.string()});
  CHECK(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja[0]["limit"].get<double>() == doctest::Approx(0.75));
  const Result b = cli({"sweep", "--config", path.string(), "--q", "3"});
  CHECK(json::parse(b.out)[0]["limit"].get<double>() == doctest::Approx(1.5));
  std::filesystem::remove(path);
}

TEST_CASE("selftest reports every suite") {
  const Result r = cli({"selftest", "--seed", "42", "--samples", "200"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 14);
}

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

#include "json.hpp"
#include "susygreen/cli.hpp"
#include "susygreen/errors.hpp"
#include "susygreen/report.hpp"

using namespace susy;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("range and point parsing") {
    const auto r = parse_range("0:1:0.25");
    REQUIRE(r.size() == 5);
    CHECK(r.back() == doctest::Approx(1.0));
    CHECK(parse_range("2.5") == std::vector<double>{2.5});
    CHECK_THROWS_AS(parse_range("0:5"), ConfigError);
    CHECK_THROWS_AS(parse_range("0:5:-1"), ConfigError);
    CHECK_THROWS_AS(parse_range("a:b:c"), ConfigError);
    const auto p = parse_points("0.5,1;2,3");
    REQUIRE(p.size() == 2);
    CHECK(p[1].first == 2.0);
    CHECK(p[1].second == 3.0);
    CHECK_THROWS_AS(parse_points("1;2"), ConfigError);
    CHECK_ABS(parse_complex("-1.5+0.25i"), Complex(-1.5, 0.25), 0.0);
    CHECK_ABS(parse_complex("2i"), Complex(0.0, 2.0), 0.0);
    CHECK_ABS(parse_complex("3-2j"), Complex(3.0, -2.0), 0.0);
    CHECK_THROWS_AS(parse_complex("2k"), ConfigError);
    CHECK_THROWS_AS(parse_complex("(1;2)"), ConfigError);
  }

  TEST_CASE("green prints the soliton kernel") {
    const auto r = cli({"green", "--model", "soliton", "--energy", "-4", "--points", "0,0"});
    CHECK(r.code == kExitOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == "kernel,x,y,re,im");
    CHECK(l[1] == "G0,0,0,0.25,0");
    CHECK(l[2] == "G1,0,0,0.333333333333333,0");
  }

  TEST_CASE("green as JSON") {
    const auto r = cli({"green", "--model", "csch", "--energy", "-4", "--points", "1,1", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[1]["kernel"] == "G1");
    CHECK(j[1]["re"].get<double>() == doctest::Approx(0.20641454216185695).epsilon(1e-9));
  }

  TEST_CASE("trace sweep columns and values") {
    const auto r = cli({"trace-sweep", "--model", "soliton", "--energy", "-4"});
    REQUIRE(r.code == kExitOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "E_re,E_im,trace_re,trace_im,Q1_re,Q1_im,Q2_re,Q2_im,Q3_re,Q3_im,Q4_re,Q4_im,closed_re,closed_im,"
                  "max_disc");
    CHECK(l[1].rfind("-4,0,-0.16666666666666", 0) == 0);
  }

  TEST_CASE("half-line sweep exit status follows the closed form") {
    const auto printed = cli({"trace-sweep", "--model", "csch", "--energy", "-4"});
    CHECK(printed.code == kExitVerification);
    CHECK(printed.err.find("exceed tolerance") != std::string::npos);
    const auto consistent = cli({"trace-sweep", "--model", "csch", "--energy", "-4", "--closed-form", "consistent"});
    CHECK(consistent.code == kExitOk);
  }

  TEST_CASE("density rows") {
    const auto r = cli({"density", "--model", "soliton", "--k", "0:1:0.5"});
    REQUIRE(r.code == kExitOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "k,numeric,analytic");
    const auto w = cli({"density", "--model", "csch", "--k", "1", "--window", "50"});
    REQUIRE(w.code == kExitOk);
    CHECK(lines(w.out)[1].find("0.10250322684") != std::string::npos);
    CHECK(cli({"density", "--model", "csch", "--k", "1"}).code == kExitConfig);
  }

  TEST_CASE("exit codes") {
    const auto cut = cli({"green", "--model", "free-line", "--energy", "4"});
    CHECK(cut.code == kExitConfig);
    CHECK(cut.err.find("energy on continuous spectrum") != std::string::npos);
    CHECK(cli({"density", "--model", "soliton", "--k", "0:5"}).code == kExitConfig);
    CHECK(cli({"green", "--model", "nope", "--energy", "-4"}).code == kExitConfig);
    CHECK(cli({"green", "--energy", "-4", "--bogus"}).code == kExitConfig);
    CHECK(cli({"trace-sweep", "--model", "soliton", "--energy", "-2+1i", "--tol", "1e-300"}).code ==
          kExitVerification);
    CHECK(cli({"--help"}).code == kExitOk);
  }

  TEST_CASE("config file") {
    const std::string path = "cli_test_config.json";
    {
      std::ofstream f(path);
      f << R"({"model": "soliton", "energy": "-4", "points": [[0, 0]]})";
    }
    const auto r = cli({"green", "--config", path});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out).size() == 3);
    // Command-line options take precedence over the file.
    const auto o = cli({"green", "--config", path, "--model", "free-line"});
    REQUIRE(o.code == kExitOk);
    CHECK(lines(o.out)[2] == "G1,0,0,0.25,0");
    {
      std::ofstream f(path);
      f << R"({"modle": "soliton"})";
    }
    CHECK(cli({"green", "--config", path}).code == kExitConfig);
    std::remove(path.c_str());
  }

  TEST_CASE("sweeps do not depend on the thread count") {
    const std::vector<std::string> base{"trace-sweep", "--model", "soliton", "--log-grid", "0.5:20:4:6"};
    auto one = base, three = base;
    one.insert(one.end(), {"--threads", "1"});
    three.insert(three.end(), {"--threads", "3"});
    const auto a = cli(one), b = cli(three);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() > 10);
  }

  TEST_CASE("log grid avoids the cut and the poles") {
    const auto t = make_transformation({Scenario::FreeToSoliton, 1.0});
    const auto Es = log_energy_grid(t, 0.5, 50.0, 5, 8);
    CHECK_FALSE(Es.empty());
    for (Complex E : Es) {
      CHECK(std::abs(std::arg(E)) >= 0.05);
      CHECK(std::abs(E + 1.0) >= 0.1);
    }
    CHECK_THROWS_AS(log_energy_grid(t, 2.0, 1.0, 5, 8), ConfigError);
    CHECK_THROWS_AS(log_energy_grid(t, 0.5, 5.0, 0, 8), ConfigError);
  }
}

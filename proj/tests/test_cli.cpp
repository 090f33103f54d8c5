#include <doctest.h>

#include "nullag/cli.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "nullag");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = nullag::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.insert(args.begin(), "--json");
  Result r = run(std::move(args));
  CHECK(r.code == expected_code);
  return nlohmann::json::parse(r.out);
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("derive") {
  Result lin = run({"derive", "--B", "f1(t)*x + f2(t)*t + f3(t)", "--f", "f4(t)"});
  CHECK(lin.code == 0);
  CHECK(contains(lin.out, "ProvenNull"));
  CHECK(contains(lin.out, "PASS"));

  auto one = run_json({"derive", "--B", "1"});
  CHECK(one["result"]["null_pair"]["L"] == "x'");
  CHECK(one["passed"] == true);

  auto quad = run_json({"derive", "--B", "B0*exp(a0*x)"});
  CHECK(quad["result"]["null_pair"]["L"] == "x'*B0*exp(x*a0)");

  auto frac = run_json({"derive", "--fraction", "a1", "a2", "0", "a4"});
  CHECK(frac["result"]["null_pair"]["C"] == "0");
}

TEST_CASE("verify") {
  auto ok = run_json({"verify", "a1*x'/(a2*x + a4)"});
  CHECK(ok["result"]["nullity"]["verdict"] == "ProvenNull");

  auto bad = run_json({"verify", "0.5*x'^2"}, 2);
  CHECK(bad["passed"] == false);
  CHECK(bad["result"]["nullity"]["verdict"] == "NotNull");
  CHECK_FALSE(bad["result"]["nullity"]["check"]["witness"].is_null());

  // The printed non-standard form against the machine-derived one.
  Result audit = run({"verify", "f1(t)*x'/(f3(t)*x + f3(t)*t + f4(t))", "--fraction", "f1(t)", "f2(t)", "f3(t)",
                      "f4(t)"});
  CHECK(audit.code == 2);
  CHECK(contains(audit.out, "Distinct"));
}

TEST_CASE("harmonic and eom") {
  auto h = run_json({"harmonic", "--B", "f1(t)*x + f2(t)*t + f3(t)", "--f", "f4(t)", "-n", "2"});
  CHECK(h["passed"] == true);

  Result cap = run({"harmonic", "--B", "x", "-n", "12"});
  CHECK(cap.code == 3);

  Result c1 = run({"eom", "--B", "B0*exp(alpha0*x)", "--rule", "corollary1"});
  CHECK(c1.code == 0);
  CHECK(contains(c1.out, "x'' = -x'^2*alpha0"));

  Result el = run({"eom", "--L", "x'^2/2", "--rule", "el"});
  CHECK(el.code == 0);
  CHECK(contains(el.out, "x'' = 0"));

  Result p3 = run({"eom", "--B", "x", "--rule", "prop3", "--F", "power:3"});
  CHECK(p3.code == 0);
}

TEST_CASE("system") {
  auto tied = run_json({"system", "constant", "--alpha", "0", "--beta", "2", "--gamma", "1"});
  CHECK(tied["result"]["system"]["classification"] == "DampedOscillatorTied");

  auto ho = run_json({"system", "constant", "--alpha", "0", "--beta", "0", "--gamma", "1"});
  CHECK(ho["result"]["system"]["classification"] == "NoNullLagrangian");
  CHECK_FALSE(ho["result"]["system"]["witness"].is_null());

  auto td = run_json({"system", "timedep", "--alpha", "0", "--beta", "t", "--gamma", "auto"});
  CHECK(td["result"]["system"]["classification"] == "TimeDependent");

  Result violated = run({"system", "timedep", "--alpha", "0", "--beta", "t", "--gamma", "t^2/4"});
  CHECK(violated.code == 2);

  auto disp = run_json({"system", "displacement", "--alpha", "1/x", "--beta", "2", "--c", "0"});
  CHECK(disp["result"]["system"]["classification"] == "DisplacementDependent");
}

TEST_CASE("simulate writes the trajectory") {
  auto path = temp_file("nullag_test_quadratic.csv");
  auto j = run_json({"simulate", "--system", "quadratic", "--a0", "1", "--ic", "0,0,2", "--h", "1e-3", "--t1", "1",
                     "--csv", path.string()});
  CHECK(std::abs(j["result"]["x1"].get<double>() - 1.0986122886681098) <= 1e-8);
  CHECK(j["result"]["drift"]["max_abs_drift"].get<double>() <= 1e-8);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x,xdot,L_null");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 1001);
  std::filesystem::remove(path);

  auto nsd = run_json({"simulate", "--system", "oscillator", "--route", "nsd", "--t1", "1"});
  CHECK(std::abs(nsd["result"]["x1"].get<double>() - 0.7357588823428847) <= 1e-8);

  auto custom = run_json({"simulate", "--B", "x + f1(t)", "--fn", "f1=t", "--ic", "0,1,1", "--t1", "1"});
  CHECK(custom["passed"] == true);
}

TEST_CASE("compare, action, audit") {
  for (const char* s : {"inertia", "quadratic", "oscillator"}) {
    Result r = run({"compare", "--system", s, "--t1", "5"});
    INFO(s, r.out, r.err);
    CHECK(r.code == 0);
  }
  CHECK(run({"action", "x*x'"}).code == 0);
  CHECK(run({"action", "x'^2/2"}).code == 2);

  auto a = run_json({"audit"});
  CHECK(a["passed"] == true);
  CHECK(a["result"]["entries"].size() == 5);
}

TEST_CASE("batch") {
  auto path = temp_file("nullag_test_corpus.jsonl");
  {
    std::ofstream f(path);
    f << "# comment\n"
      << R"j({"name": "lin", "B": "f1(t)*x + f2(t)", "f": "f3(t)"})j" << '\n'
      << R"j({"kind": "fraction", "f1": "a1", "f2": "a2", "f3": "0", "f4": "a4"})j" << '\n'
      << R"j({"name": "c", "B": "c1"})j" << '\n';
  }
  auto one = run_json({"batch", path.string(), "--harmonics", "2"});
  auto many = run_json({"batch", path.string(), "--harmonics", "2", "--jobs", "3"});
  CHECK(one["result"] == many["result"]);
  REQUIRE(one["result"]["entries"].size() == 3);
  CHECK(one["result"]["entries"][1]["name"] == "line3");

  {
    std::ofstream f(path);
    f << R"j({"B": "x +"})j" << '\n';
  }
  Result broken = run({"batch", path.string()});
  CHECK(broken.code == 3);
  CHECK(contains(broken.err, "line 1"));
  std::filesystem::remove(path);
  CHECK(run({"batch", path.string()}).code == 3);
}

TEST_CASE("envelope, determinism and input errors") {
  auto j = run_json({"--seed", "7", "verify", "x*x'"});
  CHECK(j["tool"] == "nullag");
  CHECK(j["seed"] == 7);
  CHECK(j["command"] == "verify");
  CHECK(j["tolerances"]["eq"] == 1e-9);

  Result a = run({"--json", "verify", "x'^2 + sin(x)"});
  Result b = run({"--json", "verify", "x'^2 + sin(x)"});
  CHECK(a.out == b.out);

  Result text = run({"verify", "x*x'"});
  CHECK(contains(text.out, "seed 20240601"));
  CHECK(contains(text.out, "nullag 0.1.0"));

  CHECK(run({"verify", "x +"}).code == 3);
  CHECK(run({"verify", "foo(x)"}).code == 3);
  CHECK(run({"derive"}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"simulate", "--system", "pendulum"}).code == 3);
  CHECK(run({"--x-box", "2,1", "verify", "x"}).code == 3);

  auto err = run_json({"verify", "x'''' "}, 3);
  CHECK(err["error"]["code"] == "malformed_derivative");
  CHECK(run({"--help"}).code == 0);
}

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace hk;
using namespace hk::cli;

namespace {

struct Run {
  int code = -1;
  std::string out, csv, err;
};

Run run(const std::string& command, const std::string& target, const std::vector<std::string>& params = {},
        bool with_csv = false) {
  RunConfig cfg;
  cfg.command = command;
  cfg.target = target;
  for (const auto& p : params) apply_assignment(p, cfg);
  std::ostringstream out, csv, err;
  Run r;
  r.code = run_command(cfg, Streams{out, with_csv ? &csv : nullptr, err});
  r.out = out.str();
  r.csv = csv.str();
  r.err = err.str();
  return r;
}

std::vector<nlohmann::json> lines(const std::string& s) {
  std::vector<nlohmann::json> v;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) v.push_back(nlohmann::json::parse(line));
  return v;
}

}  // namespace

TEST_CASE("verify") {
  auto ok = run("verify", "weak-convex-dilation");
  CHECK(ok.code == 0);
  for (const auto& j : lines(ok.out)) {
    CHECK(j["verdict"] == "pass");
    CHECK(j["schema_version"] == 1);
  }
  CHECK(run("verify", "dcp-formulas", {"A=2", "B=2", "C=1", "D=1"}).code == 0);
  auto bad = run("verify", "nonsense");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("graph-transversality") != std::string::npos);
  CHECK(run("verify", "dcp-formulas", {"Q=1"}).code == 2);
}

TEST_CASE("build-handle") {
  auto w = run("build-handle", "weak_convex", {"eps1=-1/2", "eps2=1/2"}, true);
  CHECK(w.code == 0);
  auto j = nlohmann::json::parse(w.out);
  CHECK(std::abs(j["derived"]["T"].get<double>() - std::log(3.0)) < 1e-12);
  CHECK(w.csv.rfind("line,t,r1,th1,r2,th2\n", 0) == 0);

  auto c = run("build-handle", "contact_pair", {"A=2", "B=2", "C=1", "D=1", "eps2=1"});
  CHECK(c.code == 0);
  CHECK(std::abs(nlohmann::json::parse(c.out)["params"]["eps1"].get<double>() + 1) < 1e-15);

  auto order = run("build-handle", "weak-convex", {"R1=1.1"});
  CHECK(order.code == 1);
  CHECK(order.err.find("R1 < R2 < R3") != std::string::npos);
  auto rej = run("build-handle", "contact-pair", {"R2=0.7"});
  CHECK(rej.code == 1);
  CHECK(lines(rej.out).at(0)["check_name"] == "cp:free-boundary-transversality");
  CHECK(run("build-handle", "teapot").code == 2);
}

TEST_CASE("prepare and push-off") {
  auto p = run("prepare", "", {"A=1", "B=2", "C=1", "D=1", "eps=1/2"}, true);
  CHECK(p.code == 0);
  auto j = nlohmann::json::parse(p.out);
  CHECK(j["A0"] == "5/4");
  CHECK(std::abs(std::exp(j["h0"].get<double>()) - 1.6) < 1e-10);
  CHECK(p.csv.rfind("r,h,dh\n", 0) == 0);
  CHECK(run("prepare", "", {"A=1", "B=1", "C=1", "D=1"}).code == 1);

  auto po = run("push-off", "", {}, true);
  CHECK(po.code == 0);
  CHECK(nlohmann::json::parse(po.out)["fat"] == true);
  CHECK(po.csv.rfind("x,y,", 0) == 0);
  CHECK(run("push-off", "", {"framing=0"}).code == 1);
}

TEST_CASE("emit-diagram and pipeline") {
  CHECK(run("emit-diagram", "unknot", {"F=1"}).code == 0);
  CHECK(run("emit-diagram", "hopf", {"F1=-1", "F2=0"}).code == 1);
  auto text = run("emit-diagram", "unknot", {"F=1", "format=text"});
  CHECK(text.out.find("unknot 1 surgered") != std::string::npos);

  auto u = run("pipeline", "unknot", {"framings=1"});
  CHECK(u.code == 0);
  CHECK(nlohmann::json::parse(u.out)["diagram"]["admissible"] == true);
  auto h = run("pipeline", "hopf", {"framings=-1,0"});
  CHECK(h.code == 1);
  CHECK(nlohmann::json::parse(h.out)["halted_at"] == 4);
  auto s = run("pipeline", "surface", {"g=1", "n=2"});
  CHECK(s.code == 0);
  auto d = nlohmann::json::parse(s.out)["diagram"];
  int zero = 0;
  for (const auto& c : d["components"]) zero += c["role"] == "ambient" && c["framing"] == 0;
  CHECK(zero == 3);
  CHECK(run("pipeline", "trefoil").code == 2);
}

TEST_CASE("config file with flag override") {
  const std::string path = "test_cli_config.cfg";
  {
    std::ofstream f(path);
    f << "# model pair\nA = 2\nB = 2\nC = 1\nD = 1\nseed = 3\ndensity = 1\n";
  }
  RunConfig cfg;
  read_config_file(path, cfg);
  CHECK(cfg.spec.seed == 3);
  CHECK(cfg.params.rational("A", Rational(0)) == 2);
  apply_assignment("A=5/2", cfg);
  CHECK(cfg.params.rational("A", Rational(0)) == Rational(5, 2));
  CHECK_THROWS_AS(apply_assignment("novalue", cfg), UsageError);
  CHECK_THROWS_AS(read_config_file("missing.cfg", cfg), UsageError);
}

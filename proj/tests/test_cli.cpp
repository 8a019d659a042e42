#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "condense/commands.hpp"
#include "condense/config.hpp"
#include "condense/serialize.hpp"

using namespace condense;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("condense_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(CONDENSE_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

RunConfig config_with(std::vector<Setting> settings) { return load_config(std::nullopt, settings); }

}  // namespace

TEST_CASE("config parsing") {
  const auto s = parse_config_text("# comment\nfamily = fourier\n  K=9  # trailing\n\npoints = -1, 0.5\n");
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Setting{"family", "fourier"});
  CHECK(s[1] == Setting{"K", "9"});
  RunConfig c;
  for (const auto& [k, v] : s) apply_setting(c, k, v);
  CHECK(c.points == std::vector<double>{-1.0, 0.5});
  CHECK_THROWS_AS(parse_config_text("just words\n"), ConfigError);
}

TEST_CASE("bad keys and values name the key") {
  auto key_of = [](std::vector<Setting> s) {
    try {
      config_with(std::move(s));
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<accepted>");
  };
  CHECK(key_of({{"colour", "red"}}) == "colour");
  CHECK(key_of({{"family", "nope"}}) == "family");
  CHECK(key_of({{"p", "1.5"}}) == "p");
  CHECK(key_of({{"p", "abc"}}) == "p");
  CHECK(key_of({{"K", "-1"}}) == "K");
  CHECK(key_of({{"cap", "0"}}) == "cap");
  CHECK(key_of({{"n_max", "1.5e3"}}) == "n_max");
  CHECK(key_of({{"family", "nonlinear-gal"}, {"p", "1"}}) == "p");
  CHECK(key_of({{"family", "fourier"}, {"points", "0,0"}}) == "points");
  CHECK(key_of({{"family", "fourier"}, {"points", "4"}}) == "points");
  CHECK(key_of({{"K", "12"}}) == "<accepted>");
}

TEST_CASE("file then overrides") {
  const fs::path dir = scratch("cfg");
  std::ofstream(dir / "run.cfg") << "family = nonlinear-gal\nK = 7\nseed = 5\n";
  const RunConfig c = load_config((dir / "run.cfg").string(), {{"K", "9"}});
  CHECK(c.family == "nonlinear-gal");
  CHECK(c.K == 9);
  CHECK(c.seed == 5);
  CHECK_THROWS_AS(load_config((dir / "missing.cfg").string(), {}), ConfigError);
}

TEST_CASE("cmd_run outputs") {
  const fs::path dir = scratch("run");
  std::ostringstream log, err;
  RunConfig c = config_with({{"family", "coordinate"}, {"K", "15"}, {"out", dir.string()}});
  CHECK(cmd_run(c, log, err) == kExitOk);
  const auto rows = parse_growth_csv(slurp(dir / "growth.csv"));
  CHECK(rows.size() == 15);
  const auto trace = trace_from_json(Json::parse(slurp(dir / "trace.json")));
  CHECK(trace.config.at("family") == "coordinate");
  CHECK(Json::parse(slurp(dir / "certificate.json"))["accepted"] == true);

  c.K = 0;
  CHECK(cmd_run(c, log, err) == kExitOk);
  CHECK(parse_growth_csv(slurp(dir / "growth.csv")).empty());

  c.K = 15;
  c.n_max = 3;
  std::ostringstream err2;
  CHECK(cmd_run(c, log, err2) == kExitFailed);
  CHECK(err2.str().find("horizon exhausted") != std::string::npos);
  CHECK(err2.str().find("step 1") != std::string::npos);
}

TEST_CASE("cmd_run is byte-identical across invocations") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log, err;
  for (const char* family : {"coordinate", "nonlinear-gal"}) {
    RunConfig c = config_with({{"family", family}, {"K", "12"}, {"seed", "17"}});
    c.out = a.string();
    REQUIRE(cmd_run(c, log, err) == kExitOk);
    c.out = b.string();
    REQUIRE(cmd_run(c, log, err) == kExitOk);
    for (const char* f : {"trace.json", "certificate.json", "growth.csv"}) CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("cmd_check exit codes") {
  const fs::path dir = scratch("check");
  std::ostringstream log, err;
  RunConfig c = config_with({{"family", "nonlinear-gal"}, {"samples", "2000"}, {"out", dir.string()}});
  CHECK(cmd_check(c, log, err) == kExitOk);
  CHECK(fs::exists(dir / "hypotheses.json"));
  CHECK(fs::exists(dir / "hypotheses.csv"));
  c.family = "bounded-fake";
  std::ostringstream err2;
  CHECK(cmd_check(c, log, err2) == kExitFailed);
  CHECK(err2.str().find("violations") != std::string::npos);
}

TEST_CASE("cmd_lebesgue and cmd_schedule") {
  const fs::path dir = scratch("tables");
  std::ostringstream log, err;
  CHECK(cmd_lebesgue(100, 65536, dir.string(), log, err) == kExitOk);
  const std::string csv = slurp(dir / "lebesgue.csv");
  CHECK(csv.rfind("n,L_n,asymptotic\n0,1,\n1,1.43599112417", 0) == 0);
  CHECK(cmd_lebesgue(100, 100, dir.string(), log, err) == kExitConfig);

  CHECK(cmd_schedule(1.0, 1.0, 1.0, 1.0, 3, dir.string(), log, err) == kExitOk);
  CHECK(slurp(dir / "schedule.csv").find("1,1,1,1,0.0927734375\n") != std::string::npos);
  CHECK(cmd_schedule(1.0, 1.0, 1.0, 0.5, 1, dir.string(), log, err) == kExitOk);
  CHECK(slurp(dir / "schedule.csv") == "k,m,beta_tilde,beta,gamma\n1,1,0.5,0.5,0.0625\n");
  std::ostringstream err2;
  CHECK(cmd_schedule(0.5, 1.0, 1e6, 0.5, 200, dir.string(), log, err2) == kExitFailed);
  CHECK(err2.str().find("maximal safe K") != std::string::npos);
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  CHECK(cli("run --family coordinate --K 15 --out " + dir.string()) == 0);
  CHECK(cli("run --family coordinate --K 15 --n-max 3 --out " + dir.string()) == 1);
  CHECK(cli("check --family bogus --out " + dir.string()) == 2);
  CHECK(cli("check --family bounded-fake --set samples=500 --out " + dir.string()) == 1);
  CHECK(cli("run --K notanumber") == 2);
  CHECK(cli("run --set colour=red") == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("lebesgue --n-max 20 --out " + dir.string()) == 0);
  CHECK(cli("lebesgue --n-max 200 --quadrature-order 100 --out " + dir.string()) == 2);
  CHECK(cli("schedule --p 1 --cap 1 --K 3 --out " + dir.string()) == 0);
  CHECK(cli("--help") == 0);
}

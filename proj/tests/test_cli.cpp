#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "lagns");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = lagns::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(LAGNS_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kEquilibrium = "problem.length = 10\ngrid.dx = 0.1\nrun.t_end = 3\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("unknown subcommand prints usage and exits 2") {
    const Result r = call({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.err.rfind("{\"error\":\"usage\"", 0) == 0);
    CHECK(call({}).code == 2);
    CHECK(call({"verify", "sideways", "x.cfg"}).code == 2);
  }

  TEST_CASE("version") {
    const Result r = call({"version"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("lagns ", 0) == 0);
  }

  TEST_CASE("equilibrium run writes all outputs and stays at rest") {
    const fs::path dir = scratch("cli_eq");
    const fs::path cfg = write_file(dir / "eq.cfg", kEquilibrium);
    const Result r = call({"run", cfg.string(), "--out", (dir / "out").string(), "--seedless"});
    REQUIRE(r.code == 0);
    for (const char* f : {"diagnostics.csv", "summary.json", "snapshot_t0.csv", "snapshot_t1.csv",
                          "snapshot_t2.csv", "snapshot_t3.csv"}) {
      CHECK(fs::exists(dir / "out" / f));
    }
    const auto summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(summary["status"] == "completed");
    CHECK(summary["Linf_dev_final"] == 0.0);
    CHECK(summary["pass_energy_inequality"] == true);
    CHECK(summary["seedless_checked"] == true);

    const std::string snap = slurp(dir / "out" / "snapshot_t2.csv");
    CHECK(snap.rfind("x,v,u,theta\n", 0) == 0);
    CHECK(std::count(snap.begin(), snap.end(), '\n') == 101);
  }

  TEST_CASE("replaying a config reproduces every output byte for byte") {
    const fs::path dir = scratch("cli_replay");
    const fs::path cfg = write_file(dir / "bump.cfg",
                                    "problem.length = 16\ngrid.dx = 0.1\ngas.beta = 2\n"
                                    "initial.profile = large-data-composite\nrun.t_end = 2.5\nrun.cadence = 7\n");
    REQUIRE(call({"run", cfg.string(), "--out", (dir / "a").string()}).code == 0);
    REQUIRE(call({"run", cfg.string(), "--out", (dir / "b").string()}).code == 0);
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
      const fs::path other = dir / "b" / entry.path().filename();
      REQUIRE(fs::exists(other));
      CHECK(slurp(entry.path()) == slurp(other));
      ++compared;
    }
    CHECK(compared == 6);  // csv, summary, snapshots at 0, 1, 2, 2.5
  }

  TEST_CASE("cadence flag thins the diagnostics stream") {
    const fs::path dir = scratch("cli_cadence");
    const fs::path cfg = write_file(dir / "eq.cfg", kEquilibrium);
    REQUIRE(call({"run", cfg.string(), "--out", (dir / "every").string()}).code == 0);
    REQUIRE(call({"run", cfg.string(), "--out", (dir / "sparse").string(), "--cadence", "50"}).code == 0);
    const std::string a = slurp(dir / "every" / "diagnostics.csv");
    const std::string b = slurp(dir / "sparse" / "diagnostics.csv");
    CHECK(std::count(a.begin(), a.end(), '\n') > std::count(b.begin(), b.end(), '\n'));
  }

  TEST_CASE("config errors are machine readable") {
    const fs::path dir = scratch("cli_bad");
    const fs::path cfg = write_file(dir / "bad.cfg", "gas.beta = 1\ngas.betta = 2\n");
    const Result r = call({"run", cfg.string()});
    CHECK(r.code == 3);
    const auto e = nlohmann::json::parse(r.err.substr(0, r.err.find('\n')));
    CHECK(e["error"] == "config");
    CHECK(e["line"] == 2);
    CHECK(call({"run", (dir / "missing.cfg").string()}).code == 3);
  }

  TEST_CASE("verify convergence prints the study table") {
    const fs::path dir = scratch("cli_verify");
    const fs::path cfg = write_file(dir / "mms.cfg", "verify.case = mms1\nverify.levels = 3\n");
    const Result r = call({"verify", "convergence", cfg.string(), "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("level,dx,dt,error,order\n", 0) == 0);
    CHECK(fs::exists(dir / "convergence.csv"));
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    std::getline(lines, line);
    const double order = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(order >= 1.9);
  }

  TEST_CASE("verify truncation and oracle") {
    const fs::path dir = scratch("cli_trunc");
    const fs::path cfg = write_file(dir / "t.cfg",
                                    "problem.length = 5\ngrid.dx = 0.1\ninitial.profile = gaussian-bump\n"
                                    "initial.field = theta\ninitial.amplitude = 0.3\ninitial.width = 0.5\n"
                                    "run.t_end = 0.5\nverify.lengths = 5, 10\nverify.oracle_dt = 0.001\n"
                                    "verify.oracle_ratio = 100\n");
    const Result t = call({"verify", "truncation", cfg.string(), "--out", dir.string()});
    REQUIRE(t.code == 0);
    CHECK(t.out.rfind("L,discrepancy\n", 0) == 0);
    const Result o = call({"verify", "oracle", cfg.string(), "--out", dir.string()});
    REQUIRE(o.code == 0);
    CHECK(o.out.rfind("beta,dt,dt_ref,discrepancy\n", 0) == 0);
  }

  TEST_CASE("accept runs a selected criterion") {
    const Result r = call({"accept", "--only", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS 10 jensen-root-solver", 0) == 0);
  }
}

#include <doctest.h>

#include <cmath>
#include <string>

#include "lagns/config.hpp"
#include "lagns/errors.hpp"

using namespace lagns;

namespace {

std::string message_of(std::string_view text, int* line = nullptr) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    if (line != nullptr) *line = e.line();
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("empty text gives the documented defaults") {
    const RunConfig c = parse_config("");
    CHECK(c.problem.variant == ProblemVariant::Cauchy);
    CHECK(c.problem.truncation_length == 80.0);
    CHECK(c.n_cells == 1600);
    CHECK(c.dx() == doctest::Approx(0.05));
    CHECK(c.gas.R() == 1.0);
    CHECK(c.gas.c_v() == 1.0);
    CHECK(c.gas.mu_tilde() == 1.0);
    CHECK(c.gas.kappa_tilde() == 1.0);
    CHECK(c.gas.beta() == 1.0);
    CHECK(c.profile.kind == ProfileKind::Equilibrium);
    CHECK(c.scheme.dt_initial == 0.01);
    CHECK(c.scheme.cfl_safety == 0.5);
    CHECK(c.t_end == 1.0);
    CHECK(c.cadence == 1);
    CHECK(c.output_dir == "out");
    REQUIRE(c.p_list.size() == 2);
    CHECK(std::isinf(c.p_list[1]));
    CHECK(c.probe_cell == -1);
    CHECK(c.verify.manufactured == "mms1");
  }

  TEST_CASE("full config") {
    const RunConfig c = parse_config(R"(
# comment line
problem.variant = half-isothermal
problem.length  = 20     # trailing comment
grid.dx = 0.1
gas.R = 0.4
gas.cv = 2
gas.mu = 0.5
gas.kappa = 3
gas.beta = 1.5
initial.profile = gaussian-bump
initial.field = v
initial.amplitude = 0.3
initial.center = 8
initial.width = 2
scheme.cfl_safety = 0.25
scheme.max_newton_lag = 3
run.t_end = 4
run.cadence = 5
output.dir = results/a
diagnostics.p_list = 1, 2, 4, inf
diagnostics.probe_x = 10.05
diagnostics.jensen = false
verify.lengths = 10, 20
)");
    CHECK(c.problem.variant == ProblemVariant::HalfLineIsothermal);
    CHECK(c.n_cells == 200);
    CHECK(c.gas.R() == 0.4);
    CHECK(c.gas.kappa_tilde() == 3.0);
    CHECK(c.profile.field == Field::V);
    CHECK(c.profile.center == 8.0);
    CHECK(c.scheme.max_newton_lag == 3);
    CHECK(c.cadence == 5);
    CHECK(c.output_dir == "results/a");
    CHECK(c.p_list.size() == 4);
    CHECK(c.probe_x_cell == 100);
    CHECK_FALSE(c.check_jensen);
    CHECK(c.verify.lengths == std::vector<double>{10.0, 20.0});
    CHECK(c.setup().n_cells == 200);
  }

  TEST_CASE("beta = 0 is rejected for runs") {
    const std::string m = message_of("gas.beta = 0\n");
    CHECK(contains(m, "gas.beta"));
    CHECK(contains(m, "beta > 0"));
  }

  TEST_CASE("negative beta names the sign constraint") {
    const std::string m = message_of("gas.beta = -1\n");
    CHECK(contains(m, "beta must be >= 0"));
    CHECK(contains(m, "> 0 for runs"));
  }

  TEST_CASE("syntax errors carry the line number") {
    int line = 0;
    CHECK(contains(message_of("gas.beta = 1\n\ngas.betta = 2\n", &line), "unknown key 'gas.betta'"));
    CHECK(line == 3);
    CHECK(contains(message_of("run.t_end 5\n", &line), "key = value"));
    CHECK(line == 1);
    CHECK(contains(message_of("# x\nrun.t_end = 1\nrun.t_end = 2\n", &line), "given twice"));
    CHECK(line == 3);
    CHECK(contains(message_of("grid.cells = 1.5\n", &line), "integer"));
    CHECK(contains(message_of("gas.mu = abc\n", &line), "number"));
    CHECK(contains(message_of("problem.variant = sphere\n", &line), "problem.variant"));
    CHECK(line == 1);
    CHECK(contains(message_of("output.dir =\n", &line), "missing value"));
  }

  TEST_CASE("validation errors name the key") {
    CHECK(contains(message_of("gas.gamma = 1\n"), "gas.gamma"));
    CHECK(contains(message_of("gas.cv = 0\n"), "gas.cv"));
    CHECK(contains(message_of("grid.cells = 100\ngrid.dx = 0.1\n"), "mutually exclusive"));
    CHECK(contains(message_of("grid.dx = 0.3\n"), "does not divide"));
    CHECK(contains(message_of("run.t_end = 0\n"), "run.t_end"));
    CHECK(contains(message_of("scheme.cfl_safety = 2\n"), "cfl_safety"));
    CHECK(contains(message_of("diagnostics.p_list = 0.5\n"), "p_list"));
    CHECK(contains(message_of("diagnostics.probe_cell = 5000\n"), "probe_cell"));
    CHECK(contains(message_of("diagnostics.probe_x = 100\n"), "outside"));
    CHECK(contains(message_of("problem.variant = periodic\n"), "periodic"));
    CHECK(contains(message_of("verify.case = mms7\n"), "verify.case"));
    CHECK(contains(message_of("verify.levels = 2\n"), "verify.levels"));
  }

  TEST_CASE("amplitudes must keep the initial fields positive") {
    const std::string m =
        message_of("initial.profile = gaussian-bump\ninitial.field = theta\ninitial.amplitude = -1.2\n");
    CHECK(contains(m, "initial.amplitude"));
    CHECK(contains(m, "positive"));
    CHECK(contains(message_of("initial.profile = cold-spot\ninitial.theta_min = 0\n"), "theta_min"));
    // a velocity bump may have any sign
    CHECK_NOTHROW(parse_config("initial.profile = gaussian-bump\ninitial.field = u\ninitial.amplitude = -3\n"));
    // a bump that reaches the artificial boundary is incompatible with the far field
    CHECK(contains(message_of("problem.length = 4\ngrid.dx = 0.1\ninitial.profile = gaussian-bump\n"
                              "initial.field = theta\ninitial.amplitude = 0.5\ninitial.width = 2\n"),
                   "far-field"));
  }

  TEST_CASE("every key is documented in one list") {
    const auto& keys = config_keys();
    CHECK(keys.size() >= 30);
    CHECK(std::find(keys.begin(), keys.end(), "gas.beta") != keys.end());
  }
}

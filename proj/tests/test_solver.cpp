#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "lagns/diagnostics.hpp"
#include "lagns/errors.hpp"
#include "lagns/kernels.hpp"
#include "lagns/profiles.hpp"
#include "lagns/solver.hpp"

using namespace lagns;

namespace {

ProfileSpec composite(double width = 1.0) {
  ProfileSpec p;
  p.kind = ProfileKind::LargeDataComposite;
  p.width = width;
  return p;
}

class Counter : public Observer {
 public:
  void observe(const State& s, const Grid&, const StepReport* r) override {
    times.push_back(s.time);
    if (r == nullptr) ++initial;
  }
  void finish(const State&, const Grid&) override { ++finished; }
  std::vector<double> times;
  int initial = 0;
  int finished = 0;
};

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("scheme config validation") {
    SchemeConfig c;
    CHECK_NOTHROW(c.validate());
    c.dt_initial = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.cfl_safety = 1.5;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.dt_min = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.max_newton_lag = -1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.positivity_floor = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
  }

  TEST_CASE("acoustic step bound") {
    const GasParams params(1.0, 2.0, 1.0, 1.0, 1.0);
    const Grid grid({ProblemVariant::Cauchy, 10.0}, 50);
    const State s = build_initial_state(grid, make_profiles(composite()));
    SchemeConfig c;
    c.cfl_safety = 0.4;
    double speed = 0.0;
    for (int i = 0; i < grid.n_cells(); ++i) {
      speed = std::max(speed, std::sqrt(1.0 * (1.0 + 0.5) * s.theta[i]) / s.v[i]);
    }
    CHECK(stable_dt(s, grid, params, c) == doctest::Approx(0.4 * grid.dx() / speed));
  }

  TEST_CASE("equilibrium is a fixed point of every variant") {
    for (ProblemVariant v : {ProblemVariant::Cauchy, ProblemVariant::HalfLineInsulated,
                             ProblemVariant::HalfLineIsothermal, ProblemVariant::Periodic}) {
      const Grid grid({v, 6.0}, 30);
      State s = build_initial_state(grid, make_profiles({}));
      SemiImplicitStepper stepper(grid, GasParams::normalized(2.0), SchemeConfig{});
      for (int k = 0; k < 500; ++k) stepper.advance(s);
      for (double x : s.v) CHECK(x == 1.0);
      for (double x : s.theta) CHECK(x == 1.0);
      for (double x : s.u) CHECK(x == 0.0);
    }
  }

  TEST_CASE("mass update is the exact discrete identity") {
    const Grid grid({ProblemVariant::Cauchy, 10.0}, 64);
    const State old = build_initial_state(grid, make_profiles(composite()));
    State s = old;
    SemiImplicitStepper stepper(grid, GasParams::normalized(1.0), SchemeConfig{});
    const StepReport r = stepper.advance_by(s, 0.01);
    REQUIRE(r.rejected_attempts == 0);
    const double ratio = r.dt_used / grid.dx();
    double mass_old = 0.0;
    double mass_new = 0.0;
    for (int i = 0; i < grid.n_cells(); ++i) {
      CHECK(s.v[i] == old.v[i] + ratio * (old.u[i + 1] - old.u[i]));
      mass_old += old.v[i];
      mass_new += s.v[i];
    }
    // telescoping with u = 0 at both ends
    CHECK(mass_new == doctest::Approx(mass_old).epsilon(1e-14));
    CHECK(r.max_flux_residual < 1e-12);
  }

  TEST_CASE("positivity failure halves the step") {
    const Grid grid({ProblemVariant::Cauchy, 10.0}, 100);
    InitialProfiles p = make_profiles({});
    p.u0 = [](double x) { return -2.0 * odd_bump(x, 0.0, 1.0); };
    State s = build_initial_state(grid, p);
    SemiImplicitStepper stepper(grid, GasParams::normalized(1.0), SchemeConfig{});
    const StepReport r = stepper.advance_by(s, 1.0);
    CHECK(r.rejected_attempts > 0);
    CHECK(r.dt_used == std::ldexp(1.0, -r.rejected_attempts));
    CHECK(s.time == r.dt_used);
    for (double v : s.v) CHECK(v > 0.0);
  }

  TEST_CASE("unrecoverable positivity loss leaves the state untouched") {
    const Grid grid({ProblemVariant::Cauchy, 10.0}, 40);
    ProfileSpec cold;
    cold.kind = ProfileKind::ColdSpot;
    cold.theta_min = 0.1;
    const State initial = build_initial_state(grid, make_profiles(cold));
    State s = initial;
    SchemeConfig c;
    c.positivity_floor = 0.5;  // below the cold spot already
    c.dt_min = 1e-4;
    SemiImplicitStepper stepper(grid, GasParams::normalized(2.5), c);
    try {
      stepper.advance(s);
      FAIL("expected StepFailure");
    } catch (const StepFailure& e) {
      CHECK(e.cause() == StepFailure::Cause::DtUnderflow);
      CHECK(e.last_valid() == initial);
    }
    CHECK(s == initial);
  }

  TEST_CASE("run observes initial, cadence, stops and end") {
    const Grid grid({ProblemVariant::Cauchy, 10.0}, 40);
    const State s0 = build_initial_state(grid, make_profiles(composite()));
    Counter counter;
    Observer* obs[] = {&counter};
    RunOptions opts;
    opts.cadence = 1000000;
    opts.stop_times = {0.25, 0.5, 0.75};
    SchemeConfig c;
    c.dt_initial = 0.01;
    const State end = run(s0, grid, GasParams::normalized(1.0), c, 1.0, obs, opts);
    CHECK(end.time == 1.0);
    CHECK(counter.initial == 1);
    CHECK(counter.finished == 1);
    CHECK(counter.times == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  }

  TEST_CASE("fixed dt lands exactly on t_end") {
    const Grid grid({ProblemVariant::Periodic, 4.0}, 16);
    const State s0 = build_initial_state(grid, make_profiles({}));
    Counter counter;
    Observer* obs[] = {&counter};
    RunOptions opts;
    opts.fixed_dt = true;
    opts.cadence = 3;
    SchemeConfig c;
    c.dt_initial = 0.1;
    run(s0, grid, GasParams::normalized(1.0), c, 1.0, obs, opts);
    // 10 steps: observed at 0, 3, 6, 9 and the end
    CHECK(counter.times.size() == 5);
    CHECK(counter.times.back() == 1.0);
  }

  TEST_CASE("runs are deterministic and independent of the kernel ISA") {
    const ProblemSetup setup{{ProblemVariant::HalfLineIsothermal, 12.0}, 96, [] {
                               ProfileSpec p;
                               p.kind = ProfileKind::GaussianBump;
                               p.field = Field::V;
                               p.amplitude = 0.5;
                               p.center = 5.0;
                               return make_profiles(p);
                             }()};
    auto once = [&](std::string& csv) {
      std::ostringstream os;
      DiagnosticsRecorder rec(GasParams::normalized(1.5), {}, &os);
      Observer* obs[] = {&rec};
      const State s = run(setup, GasParams::normalized(1.5), SchemeConfig{}, 2.0, obs);
      csv = os.str();
      return s;
    };
    std::string csv1, csv2;
    const State a = once(csv1);
    const State b = once(csv2);
    CHECK(a == b);
    CHECK(csv1 == csv2);

    if (kernels::isa_available(kernels::Isa::Avx2)) {
      const kernels::Isa before = kernels::active().isa;
      kernels::force_isa(kernels::Isa::Scalar);
      std::string csv_s;
      const State s_scalar = once(csv_s);
      kernels::force_isa(kernels::Isa::Avx2);
      std::string csv_v;
      const State s_avx = once(csv_v);
      kernels::force_isa(before);
      CHECK(s_scalar == s_avx);
    }
  }

  TEST_CASE("energy-entropy decreases on a small large-data run") {
    const Grid grid({ProblemVariant::Cauchy, 20.0}, 200);
    const State s0 = build_initial_state(grid, make_profiles(composite()));
    const GasParams params = GasParams::normalized(1.0);
    DiagnosticsRecorder rec(params, {});
    Observer* obs[] = {&rec};
    SchemeConfig c;
    c.cfl_safety = 0.02;
    run(s0, grid, params, c, 2.0, obs);
    const auto& r = rec.records();
    REQUIRE(r.size() > 10);
    for (std::size_t k = 1; k < r.size(); ++k) {
      CHECK(r[k].energy_entropy <= r[k - 1].energy_entropy + 1e-12);
    }
    CHECK(r.back().energy_entropy + r.back().cum_dissipation <= 1.002 * rec.e0());
  }

  TEST_CASE("single step helper") {
    const Grid grid({ProblemVariant::Cauchy, 10.0}, 40);
    const State s0 = build_initial_state(grid, make_profiles(composite()));
    const auto [s1, report] = step(s0, grid, GasParams::normalized(1.0), SchemeConfig{});
    CHECK(s1.time == report.dt_used);
    CHECK(report.dt_used > 0.0);
    State bad = s0;
    bad.v[3] = -1.0;
    CHECK_THROWS_AS(step(bad, grid, GasParams::normalized(1.0), SchemeConfig{}), DomainError);
  }
}

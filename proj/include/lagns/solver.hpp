#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lagns/gas.hpp"
#include "lagns/grid.hpp"
#include "lagns/tridiag.hpp"

namespace lagns {

struct SchemeConfig {
  double dt_initial = 0.01;  // first trial step of every step() call (ceiling on dt)
  double cfl_safety = 0.5;
  double dt_min = 1e-10;
  int max_newton_lag = 2;  // coefficient re-lag sweeps per temperature solve
  double positivity_floor = 1e-8;
  int max_rejections = 60;  // halvings allowed inside one step

  /// Throws DomainError naming the offending field.
  void validate() const;
};

struct StepReport {
  double dt_used = 0.0;
  int rejected_attempts = 0;
  double max_flux_residual = 0.0;  // max |A u_new - rhs| of the momentum system
};

/// Additive source terms, one per equation, evaluated at (x, t). Used by the
/// manufactured-solution studies; production runs pass none.
struct Forcing {
  std::function<double(double, double)> mass;
  std::function<double(double, double)> momentum;
  std::function<double(double, double)> energy;
};

/// A step could not be completed. Carries the last state that satisfied
/// every invariant.
class StepFailure : public std::runtime_error {
 public:
  enum class Cause { DtUnderflow, SolverBreakdown };

  StepFailure(const std::string& what, State last_valid, Cause cause)
      : std::runtime_error(what), last_valid_(std::move(last_valid)), cause_(cause) {}

  const State& last_valid() const noexcept { return last_valid_; }
  Cause cause() const noexcept { return cause_; }

 private:
  State last_valid_;
  Cause cause_;
};

/// Largest step allowed by the acoustic CFL bound
///   cfl_safety * dx / max_i sqrt(R theta_i (1 + R/c_v)) / v_i.
/// Diffusion is integrated implicitly and does not enter.
double stable_dt(const State& state, const Grid& grid, const GasParams& params,
                 const SchemeConfig& config);

/// Semi-implicit integrator with reusable work buffers. One instance per run;
/// not shareable across threads.
class SemiImplicitStepper {
 public:
  SemiImplicitStepper(const Grid& grid, const GasParams& params, const SchemeConfig& config);

  /// Advances `state` by min(dt_initial, stable_dt), halving on positivity
  /// failure. On StepFailure / SolverBreakdown `state` is left unchanged.
  StepReport advance(State& state, const Forcing* forcing = nullptr);

  /// Same, starting from an explicit trial step `dt`.
  StepReport advance_by(State& state, double dt, const Forcing* forcing = nullptr);

  const Grid& grid() const noexcept { return grid_; }
  const GasParams& params() const noexcept { return params_; }
  const SchemeConfig& config() const noexcept { return config_; }

 private:
  // One attempt at step size dt. Returns false when a field drops below the
  // positivity floor; throws SolverBreakdown on loss of diagonal dominance.
  bool attempt(const State& old, double dt, const Forcing* forcing, State& out,
               double& residual);
  void solve_momentum(const State& old, const std::vector<double>& v_new, double dt,
                      const Forcing* forcing, std::vector<double>& u_new, double& residual);
  void solve_temperature(const State& old, const std::vector<double>& v_new,
                         const std::vector<double>& u_new, double dt, const Forcing* forcing,
                         std::vector<double>& theta_new);

  Grid grid_;
  GasParams params_;
  SchemeConfig config_;
  TridiagonalSystem sys_;
  std::vector<double> scratch_;
  std::vector<double> solution_;
  std::vector<double> theta_lag_;
  std::vector<double> phi_old_;
  std::vector<double> theta_mean_;
  std::vector<double> inv_v_mean_;
  std::vector<double> conductance_;
  State trial_;
};

/// Single step from `state` (which must satisfy positivity and carry its
/// boundary conditions).
std::pair<State, StepReport> step(const State& state, const Grid& grid, const GasParams& params,
                                  const SchemeConfig& config);

/// Receives the run's states. `report` is null for the initial observation.
class Observer {
 public:
  virtual ~Observer() = default;
  virtual void observe(const State& state, const Grid& grid, const StepReport* report) = 0;
  /// Called once when the run ends, normally or by StepFailure.
  virtual void finish(const State& /*last*/, const Grid& /*grid*/) {}
};

struct RunOptions {
  int cadence = 1;                  // observe every `cadence` accepted steps (and at stops, t_end)
  std::vector<double> stop_times;   // steps are shortened to land exactly on these
  const Forcing* forcing = nullptr;
  bool fixed_dt = false;            // use dt_initial verbatim, ignoring the CFL bound
};

struct ProblemSetup {
  ProblemKind problem;
  int n_cells = 0;
  InitialProfiles profiles;
};

/// Advances `initial` to t_end. Observers see the initial state, every
/// `cadence`-th accepted step, every stop time, and the final state.
/// Deterministic.
/// Throws StepFailure (with the last valid state) on dt underflow or
/// tridiagonal breakdown.
State run(const State& initial, const Grid& grid, const GasParams& params,
          const SchemeConfig& config, double t_end, std::span<Observer* const> observers,
          const RunOptions& options = {});

/// Builds the grid and initial state from `setup`, then runs.
State run(const ProblemSetup& setup, const GasParams& params, const SchemeConfig& config,
          double t_end, std::span<Observer* const> observers, const RunOptions& options = {});

}  // namespace lagns

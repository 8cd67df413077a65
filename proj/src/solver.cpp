#include "lagns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lagns/errors.hpp"
#include "lagns/kernels.hpp"

namespace lagns {

void SchemeConfig::validate() const {
  if (!(dt_initial > 0.0)) throw DomainError("scheme.dt_initial must be > 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw DomainError("scheme.cfl_safety must lie in (0, 1]");
  }
  if (!(dt_min > 0.0)) throw DomainError("scheme.dt_min must be > 0");
  if (dt_min > dt_initial) throw DomainError("scheme.dt_min must not exceed scheme.dt_initial");
  if (max_newton_lag < 0) throw DomainError("scheme.max_newton_lag must be >= 0");
  if (!(positivity_floor > 0.0)) throw DomainError("scheme.positivity_floor must be > 0");
  if (max_rejections < 0) throw DomainError("scheme.max_rejections must be >= 0");
}

double stable_dt(const State& state, const Grid& grid, const GasParams& params,
                 const SchemeConfig& config) {
  const double c = params.R() * params.adiabatic_index();
  const double speed =
      kernels::active().max_wave_speed(state.v.data(), state.theta.data(), c, state.v.size());
  if (!(speed > 0.0)) return std::numeric_limits<double>::infinity();
  return config.cfl_safety * grid.dx() / speed;
}

SemiImplicitStepper::SemiImplicitStepper(const Grid& grid, const GasParams& params,
                                         const SchemeConfig& config)
    : grid_(grid), params_(params), config_(config) {
  config_.validate();
  const auto n = static_cast<std::size_t>(grid.n_cells());
  theta_lag_.resize(n);
  phi_old_.resize(n);
  theta_mean_.resize(n + 1);
  inv_v_mean_.resize(n + 1);
  conductance_.resize(n + 1);
  solution_.resize(n + 1);
  trial_.v.resize(n);
  trial_.theta.resize(n);
  trial_.u.resize(n + 1);
}

void SemiImplicitStepper::solve_momentum(const State& old, const std::vector<double>& v_new,
                                         double dt, const Forcing* forcing,
                                         std::vector<double>& u_new, double& residual) {
  const int n = grid_.n_cells();
  const double dx = grid_.dx();
  const double r = dt * params_.mu_tilde() / (dx * dx);
  const double s = dt / dx;
  const auto& k = kernels::active();
  const bool periodic = grid_.periodic();

  // Non-periodic: unknowns are interior edges 1..n-1 (u = 0 on both window
  // ends). Periodic: edges 0..n-1 with u[n] = u[0].
  const std::size_t rows = periodic ? n : n - 1;
  const std::size_t offset = periodic ? 1 : 0;
  sys_.resize(rows);
  k.momentum_rows(v_new.data(), old.theta.data(), old.u.data(), r, s, params_.R(),
                  sys_.lower.data() + offset, sys_.diag.data() + offset,
                  sys_.upper.data() + offset, sys_.rhs.data() + offset, n);
  if (periodic) {
    const double lo = -r / v_new[n - 1];
    const double up = -r / v_new[0];
    sys_.lower[0] = lo;
    sys_.upper[0] = up;
    sys_.diag[0] = 1.0 - lo - up;
    const double p_right = params_.R() * old.theta[0] / v_new[0];
    const double p_left = params_.R() * old.theta[n - 1] / v_new[n - 1];
    sys_.rhs[0] = old.u[0] - s * (p_right - p_left);
  }
  if (forcing != nullptr && forcing->momentum) {
    const double t_new = old.time + dt;
    for (std::size_t row = 0; row < rows; ++row) {
      const int edge = periodic ? static_cast<int>(row) : static_cast<int>(row) + 1;
      sys_.rhs[row] += dt * forcing->momentum(grid_.edge(edge), t_new);
    }
  }

  check_diagonal_dominance(sys_, periodic);
  std::span<double> x(solution_.data(), rows);
  if (periodic) {
    solve_cyclic_tridiagonal(sys_, x, scratch_);
  } else {
    solve_tridiagonal(sys_, x, scratch_);
  }

  residual = 0.0;
  for (std::size_t row = 0; row < rows; ++row) {
    const bool first = row == 0;
    const bool last = row + 1 == rows;
    double left = 0.0;
    double right = 0.0;
    if (!first) left = x[row - 1];
    else if (periodic) left = x[rows - 1];
    if (!last) right = x[row + 1];
    else if (periodic) right = x[0];
    const double ax = sys_.lower[row] * left + sys_.diag[row] * x[row] + sys_.upper[row] * right;
    residual = std::max(residual, std::fabs(ax - sys_.rhs[row]));
  }

  if (periodic) {
    std::copy(x.begin(), x.end(), u_new.begin());
    u_new[n] = u_new[0];
  } else {
    u_new[0] = 0.0;
    std::copy(x.begin(), x.end(), u_new.begin() + 1);
    u_new[n] = 0.0;
  }
}

void SemiImplicitStepper::solve_temperature(const State& old, const std::vector<double>& v_new,
                                            const std::vector<double>& u_new, double dt,
                                            const Forcing* forcing,
                                            std::vector<double>& theta_new) {
  const int n = grid_.n_cells();
  const double dx = grid_.dx();
  const double s = dt / (dx * dx);
  const double a = dt * params_.R() / dx;
  const double b = dt * params_.mu_tilde() / (dx * dx);
  const double kappa = params_.kappa_tilde();
  const double beta = params_.beta();
  const auto& k = kernels::active();
  const ProblemVariant variant = grid_.variant();
  const bool periodic = grid_.periodic();

  auto edge_conductance = [&](double theta_mean, double inv_v_mean) {
    return kappa * std::pow(theta_mean, beta) * inv_v_mean;
  };

  std::copy(old.theta.begin(), old.theta.end(), theta_lag_.begin());
  for (int i = 0; i < n; ++i) phi_old_[i] = old.theta[i] - 1.0;
  sys_.resize(n);
  for (int sweep = 0; sweep <= config_.max_newton_lag; ++sweep) {
    k.edge_means(theta_lag_.data(), v_new.data(), theta_mean_.data(), inv_v_mean_.data(), n);
    for (int j = 1; j < n; ++j) conductance_[j] = edge_conductance(theta_mean_[j], inv_v_mean_[j]);

    // Window ends. In the deviation unknown every far-field or wall value
    // is zero, so the end conductances add nothing to the right-hand side.
    switch (variant) {
      case ProblemVariant::Cauchy:
        conductance_[0] = edge_conductance(0.5 * (1.0 + theta_lag_[0]), 0.5 * (1.0 + 1.0 / v_new[0]));
        conductance_[n] =
            edge_conductance(0.5 * (theta_lag_[n - 1] + 1.0), 0.5 * (1.0 / v_new[n - 1] + 1.0));
        break;
      case ProblemVariant::HalfLineInsulated:
        conductance_[0] = 0.0;
        conductance_[n] =
            edge_conductance(0.5 * (theta_lag_[n - 1] + 1.0), 0.5 * (1.0 / v_new[n - 1] + 1.0));
        break;
      case ProblemVariant::HalfLineIsothermal:
        // ghost 2 - theta[0]: edge mean is exactly 1 and the flux is
        // 2 K (theta[0] - 1) / dx
        conductance_[0] = 2.0 * edge_conductance(1.0, 1.0 / v_new[0]);
        conductance_[n] =
            edge_conductance(0.5 * (theta_lag_[n - 1] + 1.0), 0.5 * (1.0 / v_new[n - 1] + 1.0));
        break;
      case ProblemVariant::Periodic: {
        const double wrap = edge_conductance(0.5 * (theta_lag_[n - 1] + theta_lag_[0]),
                                             0.5 * (1.0 / v_new[n - 1] + 1.0 / v_new[0]));
        conductance_[0] = wrap;
        conductance_[n] = wrap;
        break;
      }
    }

    k.heat_rows(conductance_.data(), v_new.data(), u_new.data(), phi_old_.data(), s, a, b,
                params_.c_v(), sys_.lower.data(), sys_.diag.data(), sys_.upper.data(),
                sys_.rhs.data(), n);
    if (forcing != nullptr && forcing->energy) {
      const double t_new = old.time + dt;
      for (int i = 0; i < n; ++i) sys_.rhs[i] += dt * forcing->energy(grid_.center(i), t_new);
    }

    check_diagonal_dominance(sys_, periodic);
    if (periodic) {
      solve_cyclic_tridiagonal(sys_, theta_new, scratch_);
    } else {
      solve_tridiagonal(sys_, theta_new, scratch_);
    }
    for (int i = 0; i < n; ++i) theta_new[i] += 1.0;
    std::copy(theta_new.begin(), theta_new.end(), theta_lag_.begin());
  }
}

bool SemiImplicitStepper::attempt(const State& old, double dt, const Forcing* forcing, State& out,
                                  double& residual) {
  const int n = grid_.n_cells();
  const double dx = grid_.dx();
  const double floor = config_.positivity_floor;
  const auto& k = kernels::active();

  // (a) v_new = v_old + dt D u_old, an exact per-cell identity.
  k.mass_update(old.v.data(), old.u.data(), dt / dx, out.v.data(), n);
  if (forcing != nullptr && forcing->mass) {
    for (int i = 0; i < n; ++i) out.v[i] += dt * forcing->mass(grid_.center(i), old.time);
  }
  if (*std::min_element(out.v.begin(), out.v.end()) < floor) return false;

  // (b) momentum, viscous term implicit, pressure from (v_new, theta_old).
  solve_momentum(old, out.v, dt, forcing, out.u, residual);

  // (c) temperature with lagged conductivity.
  solve_temperature(old, out.v, out.u, dt, forcing, out.theta);
  for (double th : out.theta) {
    if (!(th >= floor)) return false;
  }

  // (d)
  out.time = old.time + dt;
  apply_boundary(out, grid_);
  return true;
}

StepReport SemiImplicitStepper::advance_by(State& state, double dt, const Forcing* forcing) {
  StepReport report;
  for (;;) {
    if (dt < config_.dt_min) {
      throw StepFailure("time step underflow: dt = " + std::to_string(dt) + " < dt_min at t = " +
                            std::to_string(state.time),
                        state, StepFailure::Cause::DtUnderflow);
    }
    double residual = 0.0;
    if (attempt(state, dt, forcing, trial_, residual)) {
      report.dt_used = dt;
      report.max_flux_residual = residual;
      std::swap(state.v, trial_.v);
      std::swap(state.u, trial_.u);
      std::swap(state.theta, trial_.theta);
      state.time = trial_.time;
      state.ghosts = trial_.ghosts;
      return report;
    }
    if (report.rejected_attempts >= config_.max_rejections) {
      throw StepFailure("positivity could not be restored after " +
                            std::to_string(report.rejected_attempts) + " halvings at t = " +
                            std::to_string(state.time),
                        state, StepFailure::Cause::DtUnderflow);
    }
    ++report.rejected_attempts;
    dt *= 0.5;
  }
}

StepReport SemiImplicitStepper::advance(State& state, const Forcing* forcing) {
  const double dt = std::min(config_.dt_initial, stable_dt(state, grid_, params_, config_));
  return advance_by(state, dt, forcing);
}

std::pair<State, StepReport> step(const State& state, const Grid& grid, const GasParams& params,
                                  const SchemeConfig& config) {
  check_state(state, grid);
  SemiImplicitStepper stepper(grid, params, config);
  State next = state;
  const StepReport report = stepper.advance(next);
  return {std::move(next), report};
}

State run(const State& initial, const Grid& grid, const GasParams& params,
          const SchemeConfig& config, double t_end, std::span<Observer* const> observers,
          const RunOptions& options) {
  if (!(t_end >= 0.0)) throw DomainError("run: t_end must be >= 0");
  if (options.cadence < 1) throw DomainError("run: cadence must be >= 1");
  check_state(initial, grid);

  SemiImplicitStepper stepper(grid, params, config);
  State state = with_boundary(initial, grid);
  for (Observer* obs : observers) obs->observe(state, grid, nullptr);

  std::vector<double> stops;
  for (double t : options.stop_times) {
    if (t > state.time && t < t_end) stops.push_back(t);
  }
  std::sort(stops.begin(), stops.end());
  std::size_t next_stop = 0;

  long long accepted = 0;
  // Relative slack so that round-off in accumulated time never produces a
  // sliver step at the end.
  const double eps = 1e-12 * std::max(1.0, t_end);
  try {
    while (state.time < t_end - eps) {
      while (next_stop < stops.size() && stops[next_stop] <= state.time + eps) ++next_stop;
      const double target = next_stop < stops.size() ? stops[next_stop] : t_end;

      double dt = options.fixed_dt
                      ? config.dt_initial
                      : std::min(config.dt_initial, stable_dt(state, grid, params, config));
      bool lands = false;
      if (state.time + dt >= target - eps) {
        dt = target - state.time;
        lands = true;
      }
      StepReport report = stepper.advance_by(state, dt, options.forcing);
      const bool at_stop = lands && report.rejected_attempts == 0;
      if (at_stop) state.time = target;
      ++accepted;
      const bool at_end = state.time >= t_end - eps;
      if (at_end) state.time = t_end;
      if (at_end || at_stop || accepted % options.cadence == 0) {
        for (Observer* obs : observers) obs->observe(state, grid, &report);
      }
    }
  } catch (const SolverBreakdown& e) {
    for (Observer* obs : observers) obs->finish(state, grid);
    throw StepFailure(std::string("solver breakdown: ") + e.what(), state,
                      StepFailure::Cause::SolverBreakdown);
  } catch (const StepFailure&) {
    for (Observer* obs : observers) obs->finish(state, grid);
    throw;
  }
  for (Observer* obs : observers) obs->finish(state, grid);
  return state;
}

State run(const ProblemSetup& setup, const GasParams& params, const SchemeConfig& config,
          double t_end, std::span<Observer* const> observers, const RunOptions& options) {
  const Grid grid(setup.problem, setup.n_cells);
  const State initial = build_initial_state(grid, setup.profiles);
  return run(initial, grid, params, config, t_end, observers, options);
}

}  // namespace lagns

#include "lagns/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lagns/errors.hpp"

namespace lagns {

double SmoothField::value(double x, double t) const {
  double f = base;
  for (const Mode& m : modes) f += m.amplitude * std::sin(m.wavenumber * x + m.phase) * std::exp(-m.decay * t);
  return f;
}

double SmoothField::dx(double x, double t) const {
  double f = 0.0;
  for (const Mode& m : modes) {
    f += m.amplitude * m.wavenumber * std::cos(m.wavenumber * x + m.phase) * std::exp(-m.decay * t);
  }
  return f;
}

double SmoothField::dxx(double x, double t) const {
  double f = 0.0;
  for (const Mode& m : modes) {
    f -= m.amplitude * m.wavenumber * m.wavenumber * std::sin(m.wavenumber * x + m.phase) *
         std::exp(-m.decay * t);
  }
  return f;
}

double SmoothField::dt(double x, double t) const {
  double f = 0.0;
  for (const Mode& m : modes) {
    f -= m.decay * m.amplitude * std::sin(m.wavenumber * x + m.phase) * std::exp(-m.decay * t);
  }
  return f;
}

double ManufacturedCase::source_mass(double x, double t) const {
  return v.dt(x, t) - u.dx(x, t);
}

double ManufacturedCase::source_momentum(double x, double t) const {
  const double vv = v.value(x, t);
  const double vx = v.dx(x, t);
  const double th = theta.value(x, t);
  const double thx = theta.dx(x, t);
  const double ux = u.dx(x, t);
  const double uxx = u.dxx(x, t);
  const double pressure_x = params.R() * (thx / vv - th * vx / (vv * vv));
  const double viscous_x = params.mu_tilde() * (uxx / vv - ux * vx / (vv * vv));
  return u.dt(x, t) + pressure_x - viscous_x;
}

double ManufacturedCase::source_energy(double x, double t) const {
  const double vv = v.value(x, t);
  const double vx = v.dx(x, t);
  const double th = theta.value(x, t);
  const double thx = theta.dx(x, t);
  const double thxx = theta.dxx(x, t);
  const double ux = u.dx(x, t);
  const double beta = params.beta();
  const double th_beta = std::pow(th, beta);
  const double dth_beta = beta * std::pow(th, beta - 1.0);
  const double heat_x = params.kappa_tilde() *
                        ((dth_beta * thx * thx + th_beta * thxx) / vv - th_beta * thx * vx / (vv * vv));
  return params.c_v() * theta.dt(x, t) + params.R() * th * ux / vv - heat_x -
         params.mu_tilde() * ux * ux / vv;
}

Forcing ManufacturedCase::forcing() const {
  return {[this](double x, double t) { return source_mass(x, t); },
          [this](double x, double t) { return source_momentum(x, t); },
          [this](double x, double t) { return source_energy(x, t); }};
}

InitialProfiles ManufacturedCase::initial_profiles() const {
  return {[this](double x) { return v.value(x, 0.0); },
          [this](double x) { return u.value(x, 0.0); },
          [this](double x) { return theta.value(x, 0.0); }};
}

State ManufacturedCase::exact_state(const Grid& grid, double t) const {
  State s;
  s.time = t;
  const int n = grid.n_cells();
  s.v.resize(n);
  s.theta.resize(n);
  s.u.resize(n + 1);
  for (int i = 0; i < n; ++i) {
    s.v[i] = v.value(grid.center(i), t);
    s.theta[i] = theta.value(grid.center(i), t);
  }
  for (int j = 0; j <= n; ++j) s.u[j] = u.value(grid.edge(j), t);
  apply_boundary(s, grid);
  return s;
}

bool ManufacturedCase::is_equilibrium() const {
  auto flat = [](const SmoothField& f) {
    return std::all_of(f.modes.begin(), f.modes.end(), [](const Mode& m) { return m.amplitude == 0.0; });
  };
  return v.base == 1.0 && u.base == 0.0 && theta.base == 1.0 && flat(v) && flat(u) && flat(theta);
}

ManufacturedCase manufactured_case(std::string_view name, double beta) {
  ManufacturedCase c;
  c.name = std::string(name);
  c.length = 4.0;
  c.t_end = 0.2;
  c.params = GasParams::normalized(beta);
  const double k = 2.0 * std::numbers::pi / c.length;
  const double quarter = 0.5 * std::numbers::pi;
  if (name == "mms1") {
    c.v = {1.0, {{0.1, k, 0.0, 1.0}}};
    c.u = {0.0, {{0.1, k, quarter, 1.0}}};
    c.theta = {1.0, {{0.1, k, quarter, 1.0}}};
  } else if (name == "mms2") {
    c.v = {1.0, {{0.15, k, 0.3, 0.5}}};
    c.u = {0.0, {{0.08, 2.0 * k, 1.1, 1.0}}};
    c.theta = {1.0, {{0.12, k, -0.7, 0.8}, {0.05, 2.0 * k, 0.0, 1.0}}};
  } else if (name == "equilibrium") {
    c.v = {1.0, {}};
    c.u = {0.0, {}};
    c.theta = {1.0, {}};
  } else {
    throw DomainError("unknown manufactured case '" + std::string(name) +
                      "' (expected mms1, mms2 or equilibrium)");
  }
  return c;
}

std::string_view to_string(Refinement refinement) {
  switch (refinement) {
    case Refinement::Spatial:
      return "spatial";
    case Refinement::Temporal:
      return "temporal";
    case Refinement::Simultaneous:
      return "simultaneous";
  }
  return "unknown";
}

Refinement parse_refinement(std::string_view name) {
  if (name == "spatial") return Refinement::Spatial;
  if (name == "temporal") return Refinement::Temporal;
  if (name == "simultaneous") return Refinement::Simultaneous;
  throw DomainError("unknown refinement '" + std::string(name) +
                    "' (expected spatial, temporal or simultaneous)");
}

double manufactured_error(const State& numerical, const Grid& grid, const ManufacturedCase& mms) {
  const State exact = mms.exact_state(grid, numerical.time);
  double err = 0.0;
  for (std::size_t i = 0; i < exact.v.size(); ++i) {
    err = std::max({err, std::fabs(numerical.v[i] - exact.v[i]),
                    std::fabs(numerical.theta[i] - exact.theta[i])});
  }
  for (std::size_t j = 0; j < exact.u.size(); ++j) {
    err = std::max(err, std::fabs(numerical.u[j] - exact.u[j]));
  }
  return err;
}

std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mms,
                                              const ConvergenceOptions& options) {
  if (options.levels < 3) throw DomainError("convergence_study: levels must be >= 3");
  if (options.base_cells < 4) throw DomainError("convergence_study: base_cells must be >= 4");
  if (!(options.base_dt > 0.0)) throw DomainError("convergence_study: base_dt must be > 0");

  std::vector<ConvergenceRow> rows;
  const Forcing forcing = mms.forcing();
  for (int level = 0; level < options.levels; ++level) {
    int cells = options.base_cells;
    double dt = options.base_dt;
    switch (options.refinement) {
      case Refinement::Spatial:
        cells <<= level;
        dt = options.base_dt / std::pow(4.0, level);
        break;
      case Refinement::Temporal:
        dt = options.base_dt / std::pow(2.0, level);
        break;
      case Refinement::Simultaneous:
        cells <<= level;
        dt = options.base_dt / std::pow(2.0, level);
        break;
    }
    const Grid grid({ProblemVariant::Periodic, mms.length}, cells);
    SchemeConfig scheme;
    scheme.dt_initial = dt;
    scheme.dt_min = std::min(scheme.dt_min, dt);
    scheme.cfl_safety = 1.0;
    scheme.max_newton_lag = options.max_newton_lag;
    RunOptions run_options;
    run_options.fixed_dt = true;
    run_options.forcing = &forcing;

    State final_state;
    try {
      const State initial = build_initial_state(grid, mms.initial_profiles());
      final_state = run(initial, grid, mms.params, scheme, mms.t_end, {}, run_options);
    } catch (const std::exception& e) {
      throw std::runtime_error("convergence_study level " + std::to_string(level) + ": " +
                               e.what());
    }
    ConvergenceRow row;
    row.level = level;
    row.dx = grid.dx();
    row.dt = dt;
    row.error = manufactured_error(final_state, grid, mms);
    row.order = std::numeric_limits<double>::quiet_NaN();
    if (!rows.empty() && rows.back().error > 0.0 && row.error > 0.0) {
      row.order = std::log2(rows.back().error / row.error);
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Semi-discrete right-hand side evaluated directly from cell/edge values.
struct ExplicitRhs {
  const Grid& grid;
  const GasParams& params;
  std::vector<double> dv, du, dtheta, flux;

  ExplicitRhs(const Grid& g, const GasParams& p)
      : grid(g), params(p), dv(g.n_cells()), du(g.n_edges()), dtheta(g.n_cells()),
        flux(g.n_edges()) {}

  void operator()(const State& s) {
    const int n = grid.n_cells();
    const double h = grid.dx();
    const double R = params.R();
    const double mu = params.mu_tilde();
    const ProblemVariant variant = grid.variant();
    const bool periodic = variant == ProblemVariant::Periodic;

    auto cell_strain = [&](int i) { return (s.u[i + 1] - s.u[i]) / h; };
    auto cell_stress = [&](int i) { return mu * cell_strain(i) / s.v[i] - R * s.theta[i] / s.v[i]; };

    for (int i = 0; i < n; ++i) dv[i] = cell_strain(i);

    std::fill(du.begin(), du.end(), 0.0);
    for (int j = 1; j < n; ++j) du[j] = (cell_stress(j) - cell_stress(j - 1)) / h;
    if (periodic) {
      du[0] = (cell_stress(0) - cell_stress(n - 1)) / h;
      du[n] = du[0];
    }

    auto conductance = [&](double th_l, double th_r, double v_l, double v_r) {
      return params.kappa_tilde() * std::pow(0.5 * (th_l + th_r), params.beta()) * 0.5 *
             (1.0 / v_l + 1.0 / v_r);
    };
    for (int j = 1; j < n; ++j) {
      flux[j] = conductance(s.theta[j - 1], s.theta[j], s.v[j - 1], s.v[j]) *
                (s.theta[j] - s.theta[j - 1]) / h;
    }
    switch (variant) {
      case ProblemVariant::Cauchy:
        flux[0] = conductance(1.0, s.theta[0], 1.0, s.v[0]) * (s.theta[0] - 1.0) / h;
        break;
      case ProblemVariant::HalfLineInsulated:
        flux[0] = 0.0;
        break;
      case ProblemVariant::HalfLineIsothermal: {
        const double ghost = 2.0 - s.theta[0];
        flux[0] = conductance(ghost, s.theta[0], s.v[0], s.v[0]) * (s.theta[0] - ghost) / h;
        break;
      }
      case ProblemVariant::Periodic:
        flux[0] = conductance(s.theta[n - 1], s.theta[0], s.v[n - 1], s.v[0]) *
                  (s.theta[0] - s.theta[n - 1]) / h;
        break;
    }
    if (periodic) {
      flux[n] = flux[0];
    } else {
      flux[n] = conductance(s.theta[n - 1], 1.0, s.v[n - 1], 1.0) * (1.0 - s.theta[n - 1]) / h;
    }

    for (int i = 0; i < n; ++i) {
      const double ux = cell_strain(i);
      dtheta[i] = (-R * s.theta[i] * ux / s.v[i] + (flux[i + 1] - flux[i]) / h +
                   mu * ux * ux / s.v[i]) /
                  params.c_v();
    }
  }
};

}  // namespace

State explicit_reference(const State& initial, const Grid& grid, const GasParams& params,
                         double t_end, double dt_ref) {
  check_state(initial, grid);
  if (!(dt_ref > 0.0)) throw DomainError("explicit_reference: dt_ref must be > 0");

  // Forward Euler limits: dt <= dx^2 / (2 D) for both diffusions, and the
  // acoustic bound dt <= dx / c.
  auto limit = [&](const State& s) {
    const double h = grid.dx();
    double d_max = 0.0;
    double c_max = 0.0;
    for (std::size_t i = 0; i < s.v.size(); ++i) {
      const double th = std::max(s.theta[i], 1.0);
      const double heat = params.kappa_tilde() * std::pow(th, params.beta()) / (params.c_v() * s.v[i]);
      d_max = std::max({d_max, params.mu_tilde() / s.v[i], heat});
      c_max = std::max(c_max, std::sqrt(params.R() * params.adiabatic_index() * s.theta[i]) / s.v[i]);
    }
    return std::min(h * h / (2.0 * d_max), h / c_max);
  };
  if (dt_ref > limit(initial)) {
    throw OracleUnstable("explicit reference step " + std::to_string(dt_ref) +
                         " exceeds the forward Euler stability limit " +
                         std::to_string(limit(initial)) + "; shrink dt_ref");
  }

  State s = with_boundary(initial, grid);
  ExplicitRhs rhs(grid, params);
  const auto steps = static_cast<long long>(std::ceil(t_end / dt_ref - 1e-9));
  const double h = t_end / static_cast<double>(std::max(1LL, steps));
  const int n = grid.n_cells();
  for (long long k = 0; k < steps; ++k) {
    rhs(s);
    for (int i = 0; i < n; ++i) {
      s.v[i] += h * rhs.dv[i];
      s.theta[i] += h * rhs.dtheta[i];
    }
    for (int j = 0; j <= n; ++j) s.u[j] += h * rhs.du[j];
    apply_boundary(s, grid);
    if ((k & 1023) == 0 || k + 1 == steps) {
      for (int i = 0; i < n; ++i) {
        if (!(s.v[i] > 0.0) || !(s.theta[i] > 0.0) || !std::isfinite(s.u[i])) {
          throw OracleUnstable("explicit reference lost positivity or finiteness at step " +
                               std::to_string(k));
        }
      }
    }
  }
  s.time = t_end;
  return s;
}

double oracle_compare(const ProblemSetup& setup, const GasParams& params, double t_end,
                      const OracleOptions& options) {
  const Grid grid(setup.problem, setup.n_cells);
  const State initial = build_initial_state(grid, setup.profiles);

  SchemeConfig scheme;
  scheme.dt_initial = options.dt;
  scheme.dt_min = std::min(scheme.dt_min, options.dt);
  scheme.cfl_safety = 1.0;
  scheme.max_newton_lag = options.max_newton_lag;
  RunOptions run_options;
  run_options.fixed_dt = true;
  const State semi = run(initial, grid, params, scheme, t_end, {}, run_options);
  const State reference = explicit_reference(initial, grid, params, t_end, options.dt / options.ratio);

  double d = 0.0;
  for (int i = 0; i < grid.n_cells(); ++i) {
    d = std::max({d, std::fabs(semi.v[i] - reference.v[i]),
                  std::fabs(semi.theta[i] - reference.theta[i])});
  }
  for (int j = 0; j <= grid.n_cells(); ++j) d = std::max(d, std::fabs(semi.u[j] - reference.u[j]));
  return d;
}

std::vector<TruncationRow> truncation_study(const GasParams& params, std::vector<double> lengths,
                                            const TruncationOptions& options) {
  if (lengths.empty()) throw DomainError("truncation_study: no lengths given");
  if (options.variant == ProblemVariant::Periodic) {
    throw DomainError("truncation_study: periodic windows have no artificial boundary");
  }
  std::sort(lengths.begin(), lengths.end());
  const double dx = options.dx;

  std::vector<Grid> grids;
  std::vector<State> finals;
  for (double L : lengths) {
    const double cells_exact = L / dx;
    const int cells = static_cast<int>(std::lround(cells_exact));
    if (std::fabs(cells - cells_exact) > 1e-9 * cells_exact) {
      throw DomainError("truncation_study: length " + std::to_string(L) + " is not a multiple of dx");
    }
    grids.emplace_back(ProblemKind{options.variant, L}, cells);
    const State initial = build_initial_state(grids.back(), make_profiles(options.profile));
    finals.push_back(run(initial, grids.back(), params, options.scheme, options.t_end, {}));
  }

  // Common interior: a centered (Cauchy) or wall-anchored (half-line)
  // fraction of the smallest window.
  const Grid& small = grids.front();
  double lo = small.x_left();
  double hi = small.x_right();
  if (options.variant == ProblemVariant::Cauchy) {
    const double half = 0.5 * options.interior_fraction * small.length();
    lo = -half;
    hi = half;
  } else {
    hi = options.interior_fraction * small.length();
  }

  auto locate = [](const Grid& g, double x) {
    const double pos = (x - g.x_left()) / g.dx() - 0.5;
    const long idx = std::lround(pos);
    if (std::fabs(pos - idx) > 1e-6) {
      throw DomainError("truncation_study: cell centers of different windows do not align");
    }
    return static_cast<int>(idx);
  };

  const Grid& big = grids.back();
  const State& ref = finals.back();
  std::vector<TruncationRow> rows;
  for (std::size_t k = 0; k < grids.size(); ++k) {
    const Grid& g = grids[k];
    const State& s = finals[k];
    double d = 0.0;
    for (int i = 0; i < g.n_cells(); ++i) {
      const double x = g.center(i);
      if (x < lo || x > hi) continue;
      const int r = locate(big, x);
      const int own_edge = i + 1;
      const int ref_edge = r + 1;
      d = std::max({d, std::fabs(s.v[i] - ref.v[r]), std::fabs(s.theta[i] - ref.theta[r]),
                    std::fabs(s.u[own_edge] - ref.u[ref_edge])});
    }
    rows.push_back({lengths[k], d});
  }
  return rows;
}

}  // namespace lagns

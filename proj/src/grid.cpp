#include "lagns/grid.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "lagns/errors.hpp"

namespace lagns {

namespace {

constexpr double kCompatibilityTol = 1e-8;

std::string fmt_value(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

std::string_view to_string(ProblemVariant variant) {
  switch (variant) {
    case ProblemVariant::Cauchy:
      return "cauchy";
    case ProblemVariant::HalfLineInsulated:
      return "half-insulated";
    case ProblemVariant::HalfLineIsothermal:
      return "half-isothermal";
    case ProblemVariant::Periodic:
      return "periodic";
  }
  return "unknown";
}

ProblemVariant parse_problem_variant(std::string_view name) {
  if (name == "cauchy") return ProblemVariant::Cauchy;
  if (name == "half-insulated") return ProblemVariant::HalfLineInsulated;
  if (name == "half-isothermal") return ProblemVariant::HalfLineIsothermal;
  if (name == "periodic") return ProblemVariant::Periodic;
  throw DomainError("unknown problem variant '" + std::string(name) +
                    "' (expected cauchy, half-insulated, half-isothermal or periodic)");
}

Grid::Grid(ProblemKind problem, int n_cells) : problem_(problem), n_cells_(n_cells) {
  if (n_cells < 4) throw DomainError("Grid: n_cells must be >= 4");
  if (!(problem.truncation_length > 0.0) || !std::isfinite(problem.truncation_length)) {
    throw DomainError("Grid: truncation_length must be positive and finite");
  }
  dx_ = problem.truncation_length / n_cells;
  x_left_ = problem.variant == ProblemVariant::Cauchy ? -0.5 * problem.truncation_length : 0.0;
}

double left_theta_ghost(ProblemVariant variant, double theta_first, double theta_last) {
  switch (variant) {
    case ProblemVariant::Cauchy:
      return 1.0;
    case ProblemVariant::HalfLineInsulated:
      return theta_first;
    case ProblemVariant::HalfLineIsothermal:
      // arithmetic mean of ghost and first cell reconstructs the wall value 1
      return 2.0 - theta_first;
    case ProblemVariant::Periodic:
      return theta_last;
  }
  return 1.0;
}

double left_v_ghost(ProblemVariant variant, double v_first, double v_last) {
  switch (variant) {
    case ProblemVariant::Cauchy:
      return 1.0;
    case ProblemVariant::HalfLineInsulated:
    case ProblemVariant::HalfLineIsothermal:
      return v_first;
    case ProblemVariant::Periodic:
      return v_last;
  }
  return 1.0;
}

void apply_boundary(State& state, const Grid& grid) {
  const int n = grid.n_cells();
  const ProblemVariant variant = grid.variant();
  if (variant == ProblemVariant::Periodic) {
    state.u[n] = state.u[0];
    state.ghosts.v_right = state.v[0];
    state.ghosts.theta_right = state.theta[0];
  } else {
    state.u[0] = 0.0;
    state.u[n] = 0.0;
    state.ghosts.v_right = 1.0;
    state.ghosts.theta_right = 1.0;
  }
  state.ghosts.v_left = left_v_ghost(variant, state.v[0], state.v[n - 1]);
  state.ghosts.theta_left = left_theta_ghost(variant, state.theta[0], state.theta[n - 1]);
}

State with_boundary(State state, const Grid& grid) {
  apply_boundary(state, grid);
  return state;
}

void check_state(const State& state, const Grid& grid) {
  const auto n = static_cast<std::size_t>(grid.n_cells());
  if (state.v.size() != n || state.theta.size() != n || state.u.size() != n + 1) {
    throw DomainError("state arrays do not match the grid");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(state.v[i] > 0.0)) throw DomainError("non-positive v in cell " + std::to_string(i));
    if (!(state.theta[i] > 0.0)) {
      throw DomainError("non-positive theta in cell " + std::to_string(i));
    }
  }
}

State build_initial_state(const Grid& grid, const InitialProfiles& profiles) {
  const int n = grid.n_cells();
  State state;
  state.v.resize(n);
  state.theta.resize(n);
  state.u.resize(n + 1);

  auto check_positive = [](double value, const char* field, double x) {
    if (!(value > 0.0)) {
      throw InvalidInitialData(std::string(field) + " must be strictly positive; got " +
                               fmt_value(value) + " at x = " + fmt_value(x));
    }
  };

  for (int i = 0; i < n; ++i) {
    const double x = grid.center(i);
    state.v[i] = profiles.v0(x);
    state.theta[i] = profiles.theta0(x);
    check_positive(state.v[i], "v0", x);
    check_positive(state.theta[i], "theta0", x);
  }
  for (int j = 0; j <= n; ++j) {
    const double x = grid.edge(j);
    state.u[j] = profiles.u0(x);
    check_positive(profiles.v0(x), "v0", x);
    check_positive(profiles.theta0(x), "theta0", x);
  }

  auto require = [](bool ok, const std::string& condition, double got, double x) {
    if (!ok) {
      throw IncompatibleData(condition + " violated: got " + fmt_value(got) + " at x = " +
                             fmt_value(x));
    }
  };
  auto check_far_field = [&](double x) {
    const double v = profiles.v0(x);
    const double u = profiles.u0(x);
    const double th = profiles.theta0(x);
    require(std::fabs(v - 1.0) < kCompatibilityTol, "far-field v0 = 1", v, x);
    require(std::fabs(u) < kCompatibilityTol, "far-field u0 = 0", u, x);
    require(std::fabs(th - 1.0) < kCompatibilityTol, "far-field theta0 = 1", th, x);
  };

  switch (grid.variant()) {
    case ProblemVariant::Cauchy:
      check_far_field(grid.x_left());
      check_far_field(grid.x_right());
      break;
    case ProblemVariant::HalfLineIsothermal: {
      const double th = profiles.theta0(0.0);
      require(std::fabs(th - 1.0) < kCompatibilityTol, "wall temperature theta0(0) = 1", th, 0.0);
      [[fallthrough]];
    }
    case ProblemVariant::HalfLineInsulated: {
      const double u = profiles.u0(0.0);
      require(std::fabs(u) < kCompatibilityTol, "wall velocity u0(0) = 0", u, 0.0);
      check_far_field(grid.x_right());
      break;
    }
    case ProblemVariant::Periodic: {
      const double a = grid.x_left();
      const double b = grid.x_right();
      const double dv = profiles.v0(a) - profiles.v0(b);
      const double du = profiles.u0(a) - profiles.u0(b);
      const double dth = profiles.theta0(a) - profiles.theta0(b);
      require(std::fabs(dv) < kCompatibilityTol, "periodic v0", dv, a);
      require(std::fabs(du) < kCompatibilityTol, "periodic u0", du, a);
      require(std::fabs(dth) < kCompatibilityTol, "periodic theta0", dth, a);
      break;
    }
  }

  apply_boundary(state, grid);
  return state;
}

}  // namespace lagns

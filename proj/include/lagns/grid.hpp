#pragma once

#include <functional>
#include <string_view>
#include <vector>

namespace lagns {

/// Which of the boundary / far-field problems a window represents.
///
/// Cauchy truncates the whole line to [-L/2, L/2]; the half-line variants
/// truncate (0, inf) to [0, L]. Every artificial window end carries the
/// far-field state (v, u, theta) = (1, 0, 1). Periodic exists for
/// manufactured-solution verification only.
enum class ProblemVariant { Cauchy, HalfLineInsulated, HalfLineIsothermal, Periodic };

std::string_view to_string(ProblemVariant variant);
ProblemVariant parse_problem_variant(std::string_view name);

struct ProblemKind {
  ProblemVariant variant = ProblemVariant::Cauchy;
  double truncation_length = 1.0;
};

/// Uniform mesh in the Lagrangian mass coordinate.
class Grid {
 public:
  Grid(ProblemKind problem, int n_cells);

  int n_cells() const noexcept { return n_cells_; }
  int n_edges() const noexcept { return n_cells_ + 1; }
  double dx() const noexcept { return dx_; }
  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_left_ + n_cells_ * dx_; }
  double length() const noexcept { return n_cells_ * dx_; }
  const ProblemKind& problem() const noexcept { return problem_; }
  ProblemVariant variant() const noexcept { return problem_.variant; }
  bool periodic() const noexcept { return problem_.variant == ProblemVariant::Periodic; }

  double center(int i) const noexcept { return x_left_ + (i + 0.5) * dx_; }
  double edge(int j) const noexcept { return x_left_ + j * dx_; }

 private:
  ProblemKind problem_;
  int n_cells_;
  double dx_;
  double x_left_;
};

/// Values one half-cell outside each window end, used by every stencil that
/// reaches past the first or last cell.
struct BoundaryGhosts {
  double v_left = 1.0;
  double theta_left = 1.0;
  double v_right = 1.0;
  double theta_right = 1.0;

  bool operator==(const BoundaryGhosts&) const = default;
};

/// Staggered discrete fields: v and theta at cell centers, u at edges.
struct State {
  double time = 0.0;
  std::vector<double> v;
  std::vector<double> theta;
  std::vector<double> u;
  BoundaryGhosts ghosts;

  bool operator==(const State&) const = default;
};

/// Ghost temperature left of cell 0 given the first interior value.
double left_theta_ghost(ProblemVariant variant, double theta_first, double theta_last);
/// Ghost specific volume left of cell 0.
double left_v_ghost(ProblemVariant variant, double v_first, double v_last);

/// Closed-form initial data. Each profile is evaluated at mass coordinate x.
struct InitialProfiles {
  std::function<double(double)> v0;
  std::function<double(double)> u0;
  std::function<double(double)> theta0;
};

/// Samples the profiles (v, theta at centers, u at edges) after checking
/// positivity and compatibility with the grid's boundary problem.
///
/// Throws InvalidInitialData on non-positive v0 / theta0 and IncompatibleData
/// when a window end disagrees with the far-field state or the wall
/// conditions by 1e-8 or more.
State build_initial_state(const Grid& grid, const InitialProfiles& profiles);

/// Enforces the boundary conditions on `state` in place and refreshes its
/// ghosts. Idempotent.
void apply_boundary(State& state, const Grid& grid);

/// Value-returning form of apply_boundary.
State with_boundary(State state, const Grid& grid);

/// Throws DomainError unless the arrays match the grid and v, theta > 0.
void check_state(const State& state, const Grid& grid);

}  // namespace lagns

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lagns/gas.hpp"
#include "lagns/grid.hpp"
#include "lagns/profiles.hpp"
#include "lagns/solver.hpp"

namespace lagns {

/// amplitude * sin(wavenumber x + phase) * exp(-decay t)
struct Mode {
  double amplitude = 0.0;
  double wavenumber = 0.0;
  double phase = 0.0;
  double decay = 0.0;
};

/// base + sum of modes, with closed-form derivatives.
struct SmoothField {
  double base = 0.0;
  std::vector<Mode> modes;

  double value(double x, double t) const;
  double dx(double x, double t) const;
  double dxx(double x, double t) const;
  double dt(double x, double t) const;
};

/// Exact smooth fields on a periodic window together with the residual
/// sources that make them solve the forced system
///   v_t = u_x + S_v
///   u_t + (R theta / v)_x = (mu u_x / v)_x + S_u
///   c_v theta_t + (R theta / v) u_x = (kappa theta^beta theta_x / v)_x + mu u_x^2 / v + S_theta
struct ManufacturedCase {
  std::string name;
  double length = 4.0;  // periodic window [0, length]
  double t_end = 0.2;
  GasParams params;
  SmoothField v;
  SmoothField u;
  SmoothField theta;

  double source_mass(double x, double t) const;
  double source_momentum(double x, double t) const;
  double source_energy(double x, double t) const;

  Forcing forcing() const;
  InitialProfiles initial_profiles() const;
  /// Exact state sampled on `grid` at time t (boundary applied).
  State exact_state(const Grid& grid, double t) const;
  bool is_equilibrium() const;
};

/// Built-in cases: "mms1", "mms2" (different modes and rates), "equilibrium".
ManufacturedCase manufactured_case(std::string_view name, double beta = 1.0);

enum class Refinement {
  Spatial,       // dx halved, dt quartered each level
  Temporal,      // dx fixed, dt halved
  Simultaneous,  // dx and dt halved together
};

std::string_view to_string(Refinement refinement);
Refinement parse_refinement(std::string_view name);

struct ConvergenceRow {
  int level = 0;
  double dx = 0.0;
  double dt = 0.0;
  double error = 0.0;
  double order = 0.0;  // log2(e_{k-1}/e_k); NaN on the first level
};

struct ConvergenceOptions {
  Refinement refinement = Refinement::Spatial;
  int levels = 4;
  int base_cells = 16;
  double base_dt = 0.02;
  int max_newton_lag = 2;
};

/// Max over (v, u, theta) of the discrete max-norm error at t_end.
double manufactured_error(const State& numerical, const Grid& grid, const ManufacturedCase& mms);

/// Runs the forced solver at each level. A failed level is rethrown as
/// std::runtime_error naming the level index.
std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& mms,
                                              const ConvergenceOptions& options);

class OracleUnstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Forward Euler on the semi-discrete system the production scheme
/// discretizes. Independent implementation, used as a fine-dt oracle.
/// Throws OracleUnstable when dt_ref violates the explicit diffusion limit
/// or the solution loses positivity.
State explicit_reference(const State& initial, const Grid& grid, const GasParams& params,
                         double t_end, double dt_ref);

struct OracleOptions {
  double dt = 2.5e-4;      // production step, used verbatim
  double ratio = 1e3;      // dt / dt_ref
  int max_newton_lag = 2;
};

/// Max over fields and cells of |semi-implicit - explicit reference| at t_end.
double oracle_compare(const ProblemSetup& setup, const GasParams& params, double t_end,
                      const OracleOptions& options = {});

struct TruncationRow {
  double length = 0.0;
  double discrepancy = 0.0;  // against the largest window, on the common interior
};

struct TruncationOptions {
  ProblemVariant variant = ProblemVariant::Cauchy;
  double dx = 0.05;
  ProfileSpec profile;
  SchemeConfig scheme;
  double t_end = 1.0;
  double interior_fraction = 0.5;  // of the smallest window, centered (Cauchy) or at the wall
};

/// Runs every window length with the same dx and compares final states on
/// the interior of the smallest window. Rows come back sorted by length.
std::vector<TruncationRow> truncation_study(const GasParams& params, std::vector<double> lengths,
                                            const TruncationOptions& options);

}  // namespace lagns

#pragma once

#include <utility>

namespace lagns {

/// Constants of an ideal polytropic gas with constant viscosity and
/// temperature-power-law heat conductivity kappa = kappa_tilde * theta^beta.
///
/// The viscosity exponent is carried as a field but frozen at zero; any
/// other value is rejected by the constructor.
class GasParams {
 public:
  GasParams() = default;
  GasParams(double R, double c_v, double mu_tilde, double kappa_tilde, double beta,
            double gamma = 0.0);

  double R() const noexcept { return R_; }
  double c_v() const noexcept { return c_v_; }
  double mu_tilde() const noexcept { return mu_tilde_; }
  double kappa_tilde() const noexcept { return kappa_tilde_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return 0.0; }

  /// Adiabatic index 1 + R/c_v.
  double adiabatic_index() const noexcept { return 1.0 + R_ / c_v_; }

  /// Unit constants (R = c_v = mu = kappa = 1) with the given conductivity exponent.
  static GasParams normalized(double beta) { return GasParams(1.0, 1.0, 1.0, 1.0, beta); }

 private:
  double R_ = 1.0;
  double c_v_ = 1.0;
  double mu_tilde_ = 1.0;
  double kappa_tilde_ = 1.0;
  double beta_ = 1.0;
};

namespace gas {

/// P = R theta / v.
double pressure(const GasParams& params, double v, double theta);

/// kappa_tilde * theta^beta.
double conductivity(const GasParams& params, double theta);

/// y - ln y - 1. Nonnegative, zero only at y = 1.
double entropy_potential(double y);

/// The two roots alpha1 <= 1 <= alpha2 of y - ln y - 1 = e0.
///
/// Found by bisection on (0, 1] and [1, Y], Y doubled until the sign
/// changes. Both roots are returned to an absolute tolerance of 1e-12
/// (or to the last representable bisection point, whichever comes first).
std::pair<double, double> jensen_roots(double e0);

}  // namespace gas
}  // namespace lagns

#include "lagns/gas.hpp"

#include <cmath>
#include <string>

#include "lagns/errors.hpp"

namespace lagns {

GasParams::GasParams(double R, double c_v, double mu_tilde, double kappa_tilde, double beta,
                     double gamma)
    : R_(R), c_v_(c_v), mu_tilde_(mu_tilde), kappa_tilde_(kappa_tilde), beta_(beta) {
  if (!(R > 0.0)) throw DomainError("GasParams: R must be > 0");
  if (!(c_v > 0.0)) throw DomainError("GasParams: c_v must be > 0");
  if (!(mu_tilde > 0.0)) throw DomainError("GasParams: mu_tilde must be > 0");
  if (!(kappa_tilde > 0.0)) throw DomainError("GasParams: kappa_tilde must be > 0");
  if (!(beta >= 0.0)) throw DomainError("GasParams: beta must be >= 0");
  if (gamma != 0.0) throw DomainError("GasParams: only gamma = 0 (constant viscosity) is supported");
}

namespace gas {

double pressure(const GasParams& params, double v, double theta) {
  if (!(v > 0.0) || !(theta > 0.0)) throw DomainError("pressure: v and theta must be positive");
  return params.R() * theta / v;
}

double conductivity(const GasParams& params, double theta) {
  if (!(theta > 0.0)) throw DomainError("conductivity: theta must be positive");
  return params.kappa_tilde() * std::pow(theta, params.beta());
}

double entropy_potential(double y) {
  if (!(y > 0.0)) throw DomainError("entropy_potential: argument must be positive");
  return y - std::log(y) - 1.0;
}

namespace {

// Bisection to the last representable midpoint. `rising` tells whether the
// residual is negative at lo and positive at hi.
template <class F>
double bisect(F&& f, double lo, double hi, bool rising) {
  for (int it = 0; it < 4096; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool positive = f(mid) > 0.0;
    if (positive == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> jensen_roots(double e0) {
  if (!(e0 >= 0.0)) throw DomainError("jensen_roots: e0 must be >= 0");
  if (e0 == 0.0) return {1.0, 1.0};

  auto residual = [e0](double y) { return y - std::log(y) - 1.0 - e0; };

  // residual(1) = -e0 < 0; it blows up at 0+ and at +inf.
  double lo = 0.5;
  while (residual(lo) <= 0.0) lo *= 0.5;
  double hi = 2.0;
  while (residual(hi) <= 0.0) hi *= 2.0;

  const double alpha1 = bisect(residual, lo, 1.0, /*rising=*/false);
  const double alpha2 = bisect(residual, 1.0, hi, /*rising=*/true);
  return {alpha1, alpha2};
}

}  // namespace gas
}  // namespace lagns

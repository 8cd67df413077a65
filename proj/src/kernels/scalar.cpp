#include <algorithm>
#include <cmath>

#include "lagns/kernels.hpp"

namespace lagns::kernels {
namespace {

void mass_update(const double* v_in, const double* u, double r, double* v_out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) v_out[i] = v_in[i] + r * (u[i + 1] - u[i]);
}

double max_wave_speed(const double* v, const double* theta, double c, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::sqrt(c * theta[i]) / v[i]);
  return m;
}

void momentum_rows(const double* v, const double* theta, const double* u, double r, double s,
                   double R, double* lower, double* diag, double* upper, double* rhs,
                   std::size_t n_cells) {
  for (std::size_t j = 1; j < n_cells; ++j) {
    const double lo = -r / v[j - 1];
    const double up = -r / v[j];
    const double p_right = R * theta[j] / v[j];
    const double p_left = R * theta[j - 1] / v[j - 1];
    lower[j - 1] = lo;
    upper[j - 1] = up;
    diag[j - 1] = 1.0 - lo - up;
    rhs[j - 1] = u[j] - s * (p_right - p_left);
  }
}

void edge_means(const double* theta, const double* v, double* theta_mean, double* inv_v_mean,
                std::size_t n_cells) {
  for (std::size_t j = 1; j < n_cells; ++j) {
    theta_mean[j] = 0.5 * (theta[j - 1] + theta[j]);
    inv_v_mean[j] = 0.5 * (1.0 / v[j - 1] + 1.0 / v[j]);
  }
}

void heat_rows(const double* K, const double* v, const double* u, const double* phi_old,
               double s, double a, double b, double c_v, double* lower, double* diag,
               double* upper, double* rhs, std::size_t n_cells) {
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double g = u[i + 1] - u[i];
    lower[i] = -s * K[i];
    upper[i] = -s * K[i + 1];
    diag[i] = c_v + a * g / v[i] + s * (K[i] + K[i + 1]);
    rhs[i] = c_v * phi_old[i] + (b * g - a) * g / v[i];
  }
}

double viscous_dissipation_sum(const double* v, const double* theta, const double* u,
                               std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = u[i + 1] - u[i];
    sum += g * g / (v[i] * theta[i]);
  }
  return sum;
}

double sum_sq_dev(const double* x, double target, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - target;
    sum += d * d;
  }
  return sum;
}

double max_abs_dev(const double* x, double target, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i] - target));
  return m;
}

double sum_sq_diff(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = x[i + 1] - x[i];
    sum += d * d;
  }
  return sum;
}

constexpr KernelTable kScalar{
    Isa::Scalar,   mass_update,         max_wave_speed,          momentum_rows,
    edge_means,    heat_rows,           viscous_dissipation_sum, sum_sq_dev,
    max_abs_dev,   sum_sq_diff,
};

}  // namespace

namespace detail {
const KernelTable& scalar_table() { return kScalar; }
}  // namespace detail

}  // namespace lagns::kernels

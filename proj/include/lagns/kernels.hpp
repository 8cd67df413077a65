#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the solver and the diagnostics.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at startup from CPUID and can be
// overridden with LAGNS_ISA=scalar|avx2 or force_isa(). Elementwise kernels
// produce bitwise-identical output on both paths (no FMA contraction, same
// operation order); reductions agree to rounding.

namespace lagns::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  // v_out[i] = v_in[i] + r * (u[i+1] - u[i]),  i < n
  void (*mass_update)(const double* v_in, const double* u, double r, double* v_out,
                      std::size_t n);

  // max_i sqrt(c * theta[i]) / v[i]
  double (*max_wave_speed)(const double* v, const double* theta, double c, std::size_t n);

  // Momentum rows for interior edges j = 1..n-1, written to row j-1:
  //   lower = -r / v[j-1], upper = -r / v[j], diag = 1 - lower - upper,
  //   rhs   = u[j] - s * (R theta[j] / v[j] - R theta[j-1] / v[j-1])
  void (*momentum_rows)(const double* v, const double* theta, const double* u, double r,
                        double s, double R, double* lower, double* diag, double* upper,
                        double* rhs, std::size_t n_cells);

  // Edge averages for j = 1..n-1, written to index j:
  //   theta_mean[j] = (theta[j-1] + theta[j]) / 2,  inv_v_mean[j] = (1/v[j-1] + 1/v[j]) / 2
  void (*edge_means)(const double* theta, const double* v, double* theta_mean,
                     double* inv_v_mean, std::size_t n_cells);

  // Temperature rows in the deviation phi = theta - 1, cell i < n, with edge
  // conductances K[0..n]:
  //   g = u[i+1] - u[i]
  //   lower = -s K[i], upper = -s K[i+1]
  //   diag  = c_v + a * g / v[i] + s (K[i] + K[i+1])
  //   rhs   = c_v phi_old[i] + (b * g - a) * g / v[i]
  void (*heat_rows)(const double* K, const double* v, const double* u, const double* phi_old,
                    double s, double a, double b, double c_v, double* lower, double* diag,
                    double* upper, double* rhs, std::size_t n_cells);

  // sum_i (u[i+1] - u[i])^2 / (v[i] theta[i])
  double (*viscous_dissipation_sum)(const double* v, const double* theta, const double* u,
                                    std::size_t n);

  // sum_i (x[i] - target)^2
  double (*sum_sq_dev)(const double* x, double target, std::size_t n);

  // max_i |x[i] - target|
  double (*max_abs_dev)(const double* x, double target, std::size_t n);

  // sum_i (x[i+1] - x[i])^2,  i < n-1
  double (*sum_sq_diff)(const double* x, std::size_t n);
};

bool isa_available(Isa isa);

/// Table for a specific ISA. Throws std::invalid_argument when unavailable.
const KernelTable& table(Isa isa);

/// Table currently in use.
const KernelTable& active();

/// Switch the active table (process-wide). Throws when the ISA is unavailable.
void force_isa(Isa isa);

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace lagns::kernels

#include "lagns/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lagns/errors.hpp"

namespace lagns {

void check_diagonal_dominance(const TridiagonalSystem& sys, bool cyclic) {
  const std::size_t n = sys.size();
  bool strict_somewhere = false;
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    if (i > 0 || cyclic) off += std::fabs(sys.lower[i]);
    if (i + 1 < n || cyclic) off += std::fabs(sys.upper[i]);
    const double d = std::fabs(sys.diag[i]);
    if (!(d >= off) || !std::isfinite(d)) {
      throw SolverBreakdown("tridiagonal row " + std::to_string(i) +
                            " is not diagonally dominant (|diag| = " + std::to_string(d) +
                            ", off-diagonal sum = " + std::to_string(off) + ")");
    }
    if (d > off) strict_somewhere = true;
  }
  if (n > 0 && !strict_somewhere) {
    throw SolverBreakdown("tridiagonal system is only weakly diagonally dominant");
  }
}

namespace {

// Thomas sweep with an explicit diagonal override for rows 0 and n-1, which
// the cyclic solve needs.
void thomas(std::span<const double> lower, std::span<const double> diag,
            std::span<const double> upper, std::span<const double> rhs, double diag_first,
            double diag_last, std::span<double> x, std::span<double> cprime) {
  const std::size_t n = diag.size();
  if (n == 1) {
    x[0] = rhs[0] / diag_first;
    return;
  }
  double denom = diag_first;
  cprime[0] = upper[0] / denom;
  x[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = (i + 1 == n) ? diag_last : diag[i];
    denom = d - lower[i] * cprime[i - 1];
    cprime[i] = (i + 1 < n) ? upper[i] / denom : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= cprime[i] * x[i + 1];
  }
}

}  // namespace

void solve_tridiagonal(const TridiagonalSystem& sys, std::span<double> x,
                       std::vector<double>& scratch) {
  const std::size_t n = sys.size();
  if (n == 0) return;
  scratch.resize(n);
  thomas(sys.lower, sys.diag, sys.upper, sys.rhs, sys.diag[0], sys.diag[n - 1], x, scratch);
}

void solve_cyclic_tridiagonal(const TridiagonalSystem& sys, std::span<double> x,
                              std::vector<double>& scratch) {
  const std::size_t n = sys.size();
  if (n < 3) throw DomainError("cyclic tridiagonal solve needs at least 3 rows");
  scratch.resize(3 * n);
  std::span<double> cprime(scratch.data(), n);
  std::span<double> corr(scratch.data() + n, n);
  std::span<double> unit(scratch.data() + 2 * n, n);

  const double corner_top = sys.lower[0];       // couples row 0 to x[n-1]
  const double corner_bottom = sys.upper[n - 1];  // couples row n-1 to x[0]
  const double g = -sys.diag[0];
  const double diag_first = sys.diag[0] - g;
  const double diag_last = sys.diag[n - 1] - corner_bottom * corner_top / g;

  thomas(sys.lower, sys.diag, sys.upper, sys.rhs, diag_first, diag_last, x, cprime);

  std::fill(unit.begin(), unit.end(), 0.0);
  unit[0] = g;
  unit[n - 1] = corner_bottom;
  thomas(sys.lower, sys.diag, sys.upper, unit, diag_first, diag_last, corr, cprime);

  const double factor = (x[0] + corner_top * x[n - 1] / g) /
                        (1.0 + corr[0] + corner_top * corr[n - 1] / g);
  for (std::size_t i = 0; i < n; ++i) x[i] -= factor * corr[i];
}

}  // namespace lagns

#include <doctest.h>

#include <cmath>
#include <vector>

#include "lagns/errors.hpp"
#include "lagns/tridiag.hpp"

using namespace lagns;

namespace {

// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

TridiagonalSystem sample_system(std::size_t n) {
  TridiagonalSystem sys;
  sys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.lower[i] = -0.3 - 0.1 * std::sin(1.7 * i);
    sys.upper[i] = -0.4 + 0.05 * std::cos(0.9 * i);
    sys.diag[i] = 1.0 + std::fabs(sys.lower[i]) + std::fabs(sys.upper[i]) + 0.1 * (i % 3);
    sys.rhs[i] = std::sin(0.37 * i) + 0.5;
  }
  return sys;
}

std::vector<std::vector<double>> dense(const TridiagonalSystem& sys, bool cyclic) {
  const std::size_t n = sys.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = sys.diag[i];
    if (i > 0) a[i][i - 1] = sys.lower[i];
    if (i + 1 < n) a[i][i + 1] = sys.upper[i];
  }
  if (cyclic) {
    a[0][n - 1] = sys.lower[0];
    a[n - 1][0] = sys.upper[n - 1];
  }
  return a;
}

}  // namespace

TEST_SUITE("tridiag") {
  TEST_CASE("thomas matches dense elimination") {
    for (std::size_t n : {1u, 2u, 5u, 33u}) {
      const TridiagonalSystem sys = sample_system(n);
      std::vector<double> x(n);
      std::vector<double> scratch;
      solve_tridiagonal(sys, x, scratch);
      const std::vector<double> ref = dense_solve(dense(sys, false), sys.rhs);
      for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-13));
    }
  }

  TEST_CASE("cyclic solve matches dense elimination") {
    for (std::size_t n : {3u, 4u, 17u}) {
      const TridiagonalSystem sys = sample_system(n);
      std::vector<double> x(n);
      std::vector<double> scratch;
      solve_cyclic_tridiagonal(sys, x, scratch);
      const std::vector<double> ref = dense_solve(dense(sys, true), sys.rhs);
      for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("diagonal dominance check") {
    TridiagonalSystem sys = sample_system(6);
    CHECK_NOTHROW(check_diagonal_dominance(sys, false));
    CHECK_NOTHROW(check_diagonal_dominance(sys, true));

    SUBCASE("a weak row fails") {
      sys.diag[3] = 0.1;
      CHECK_THROWS_AS(check_diagonal_dominance(sys, false), SolverBreakdown);
    }
    SUBCASE("all rows equal-weight is not enough") {
      TridiagonalSystem lap;
      lap.resize(4);
      for (std::size_t i = 0; i < 4; ++i) {
        lap.lower[i] = -1.0;
        lap.upper[i] = -1.0;
        lap.diag[i] = 2.0;
      }
      CHECK_THROWS_AS(check_diagonal_dominance(lap, true), SolverBreakdown);
      // the open problem drops the corner couplings and is strict at the ends
      CHECK_NOTHROW(check_diagonal_dominance(lap, false));
    }
    SUBCASE("non-finite entries fail") {
      sys.diag[0] = std::nan("");
      CHECK_THROWS_AS(check_diagonal_dominance(sys, false), SolverBreakdown);
    }
  }

  TEST_CASE("constant solution is reproduced") {
    TridiagonalSystem sys;
    sys.resize(8);
    for (std::size_t i = 0; i < 8; ++i) {
      sys.lower[i] = -0.5;
      sys.upper[i] = -0.5;
      sys.diag[i] = 2.0;
      sys.rhs[i] = 1.0;
    }
    std::vector<double> x(8);
    std::vector<double> scratch;
    solve_cyclic_tridiagonal(sys, x, scratch);
    for (double xi : x) CHECK(xi == doctest::Approx(1.0).epsilon(1e-14));
  }
}

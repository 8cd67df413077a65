#pragma once

#include <span>
#include <vector>

namespace lagns {

/// Row-indexed tridiagonal system: row i reads
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored for the open (non-cyclic) solve and
/// are the wrap-around couplings for the cyclic one.
struct TridiagonalSystem {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> rhs;

  void resize(std::size_t n) {
    lower.assign(n, 0.0);
    diag.assign(n, 0.0);
    upper.assign(n, 0.0);
    rhs.assign(n, 0.0);
  }
  std::size_t size() const noexcept { return diag.size(); }
};

/// Throws SolverBreakdown unless |diag| >= |lower| + |upper| on every row and
/// strictly on at least one. `cyclic` includes the wrap-around entries.
void check_diagonal_dominance(const TridiagonalSystem& sys, bool cyclic);

/// Thomas forward elimination / back substitution. `x` must have sys.size()
/// entries; `scratch` is resized as needed.
void solve_tridiagonal(const TridiagonalSystem& sys, std::span<double> x,
                       std::vector<double>& scratch);

/// Periodic tridiagonal solve (Sherman-Morrison correction of two Thomas sweeps).
void solve_cyclic_tridiagonal(const TridiagonalSystem& sys, std::span<double> x,
                              std::vector<double>& scratch);

}  // namespace lagns

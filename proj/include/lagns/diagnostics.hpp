#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lagns/gas.hpp"
#include "lagns/grid.hpp"
#include "lagns/solver.hpp"

namespace lagns {

/// Energy-entropy functional
///   E = sum_i dx [ (u_i^2 + u_{i+1}^2)/4 + R W(v_i) + c_v W(theta_i) ],  W(y) = y - ln y - 1.
/// The two-argument form uses R = c_v = 1.
double energy_entropy(const State& state, const Grid& grid);
double energy_entropy(const State& state, const Grid& grid, const GasParams& params);

/// Dissipation rate
///   V = sum_edges dx kappa theta_e^beta theta_x^2 (1/v)_e / theta_e^2
///     + sum_cells dx mu u_x^2 / (v theta),
/// theta_e the arithmetic edge mean, (1/v)_e the mean of 1/v, ghosts at the window ends.
double dissipation(const State& state, const Grid& grid, const GasParams& params);

struct DeviationNorms {
  std::vector<double> p;   // requested exponents (infinity allowed)
  std::vector<double> lp;  // joint L^p norm of (v - 1, u, theta - 1), same order as p
  double l2_grad = 0.0;    // L^2 norm of (v_x, u_x, theta_x)

  /// Norm for exponent `exponent`; throws DomainError when it was not requested.
  double at(double exponent) const;
};

/// Discrete L^p norms of the deviation from (1, 0, 1): v and theta over cells,
/// u over edges, all weighted by dx; p = infinity is the max over every value.
DeviationNorms deviation_norms(const State& state, const Grid& grid, std::span<const double> p_list);

/// Data the flux-decay probe needs from t = 0.
struct FluxDecayReference {
  std::vector<double> u0;  // initial edge velocities
  double v0_probe = 1.0;   // initial v in the probe cell
  int probe_cell = 0;

  static FluxDecayReference from_initial(const State& initial, int probe_cell);
};

struct FluxDecayRecord {
  int N = 0;               // reference cell
  double time = 0.0;
  double sigma_N = 0.0;    // (mu u_x - R theta) / v in cell N
  double log_Y_N = 0.0;    // trapezoid integral of sigma_N over [0, time]
  double D_N_at_x = 1.0;   // v0(x) exp( int_N^x (u - u0) dy ) at the probe cell
  bool started = false;
};

/// Updates the effective-flux record for a new state. The first call on a
/// fresh record fixes its start time; later calls accumulate log_Y_N.
FluxDecayRecord flux_decay_probe(const State& state, const Grid& grid, const GasParams& params,
                                 int N, const FluxDecayRecord& accum,
                                 const FluxDecayReference& reference);

struct DiagnosticsRecord {
  double time = 0.0;
  double energy_entropy = 0.0;
  double dissipation_V = 0.0;
  double e0 = 0.0;
  double inf_v = 0.0;
  double sup_v = 0.0;
  double inf_theta = 0.0;
  double sup_theta = 0.0;
  DeviationNorms norms;
  double cum_dissipation = 0.0;
  double sigma_N = 0.0;
  double log_Y_N = 0.0;
  double D_N_at_x = 1.0;
  int rejected_attempts = 0;  // of the step that produced this state
};

struct BoundSummary {
  double min_inf_v = 0.0;
  double max_sup_v = 0.0;
  double min_inf_theta = 0.0;
  double max_sup_theta = 0.0;
};

/// Running extrema over the whole stream. Throws DomainError on an empty stream.
BoundSummary bound_monitor(std::span<const DiagnosticsRecord> records);

struct JensenCheck {
  double max_violation = 0.0;  // > 0 when an average escapes [alpha1, alpha2]
  int windows = 0;
};

/// Averages v and theta over every unit-mass block fully inside the window and
/// compares with the roots of y - ln y - 1 = E / (weight * block mass).
JensenCheck jensen_check(const State& state, const Grid& grid, const GasParams& params,
                         double energy);

/// Header of the diagnostics CSV stream.
inline constexpr const char* kDiagnosticsCsvHeader =
    "t,E,V,cumV,inf_v,sup_v,inf_theta,sup_theta,L2_dev,Linf_dev,L2_grad,sigma_N,log_Y_N";

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& record);

/// Observer that turns the state stream into DiagnosticsRecords.
///
/// e0 is taken from the first observed state; cum_dissipation and log_Y_N
/// use the trapezoid rule between consecutive observations.
class DiagnosticsRecorder : public Observer {
 public:
  struct Options {
    std::vector<double> p_list{2.0, std::numeric_limits<double>::infinity()};
    int probe_N = -1;      // default: middle cell
    int probe_x_cell = -1; // default: probe_N
    bool keep_records = true;
    bool check_jensen = false;
  };

  DiagnosticsRecorder(GasParams params, Options options);
  DiagnosticsRecorder(GasParams params, Options options, std::ostream* csv);

  void observe(const State& state, const Grid& grid, const StepReport* report) override;
  void finish(const State& last, const Grid& grid) override;

  const std::vector<DiagnosticsRecord>& records() const noexcept { return records_; }
  const DiagnosticsRecord& last() const;
  double e0() const noexcept { return e0_; }
  double max_jensen_violation() const noexcept { return max_jensen_violation_; }
  long long observations() const noexcept { return observations_; }

 private:
  GasParams params_;
  Options options_;
  std::ostream* csv_ = nullptr;
  std::vector<DiagnosticsRecord> records_;
  DiagnosticsRecord last_;
  FluxDecayReference reference_;
  FluxDecayRecord flux_;
  double e0_ = 0.0;
  double max_jensen_violation_ = 0.0;
  long long observations_ = 0;
};

}  // namespace lagns

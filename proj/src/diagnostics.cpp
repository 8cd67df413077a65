#include "lagns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lagns/errors.hpp"
#include "lagns/kernels.hpp"

namespace lagns {

namespace {

void require_positive(const State& state, const Grid& grid, const char* who) {
  try {
    check_state(state, grid);
  } catch (const DomainError& e) {
    throw DomainError(std::string(who) + ": " + e.what());
  }
}

// Unique edge count: the periodic window's last edge duplicates the first.
std::size_t unique_edges(const Grid& grid) {
  return grid.periodic() ? grid.n_cells() : grid.n_edges();
}

double weighted_energy(const State& state, const Grid& grid, double wv, double wtheta) {
  require_positive(state, grid, "energy_entropy");
  const int n = grid.n_cells();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double kinetic = 0.25 * (state.u[i] * state.u[i] + state.u[i + 1] * state.u[i + 1]);
    sum += kinetic + wv * gas::entropy_potential(state.v[i]) +
           wtheta * gas::entropy_potential(state.theta[i]);
  }
  return sum * grid.dx();
}

}  // namespace

double energy_entropy(const State& state, const Grid& grid) {
  return weighted_energy(state, grid, 1.0, 1.0);
}

double energy_entropy(const State& state, const Grid& grid, const GasParams& params) {
  return weighted_energy(state, grid, params.R(), params.c_v());
}

double dissipation(const State& state, const Grid& grid, const GasParams& params) {
  require_positive(state, grid, "dissipation");
  const int n = grid.n_cells();
  const double dx = grid.dx();
  const double beta = params.beta();

  auto heat_term = [beta](double th_l, double th_r, double v_l, double v_r) {
    const double mean = 0.5 * (th_l + th_r);
    const double inv_v = 0.5 * (1.0 / v_l + 1.0 / v_r);
    const double diff = th_r - th_l;
    return std::pow(mean, beta) * diff * diff * inv_v / (mean * mean);
  };

  double heat = 0.0;
  for (int j = 1; j < n; ++j) {
    heat += heat_term(state.theta[j - 1], state.theta[j], state.v[j - 1], state.v[j]);
  }
  const BoundaryGhosts& g = state.ghosts;
  heat += heat_term(g.theta_left, state.theta[0], g.v_left, state.v[0]);
  if (!grid.periodic()) {
    heat += heat_term(state.theta[n - 1], g.theta_right, state.v[n - 1], g.v_right);
  }
  // per edge: dx * (diff/dx)^2 = diff^2 / dx
  heat *= params.kappa_tilde() / dx;

  const double viscous = params.mu_tilde() / dx *
                         kernels::active().viscous_dissipation_sum(
                             state.v.data(), state.theta.data(), state.u.data(), n);
  return heat + viscous;
}

double DeviationNorms::at(double exponent) const {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == exponent) return lp[k];
  }
  throw DomainError("deviation norm for p = " + std::to_string(exponent) + " was not computed");
}

DeviationNorms deviation_norms(const State& state, const Grid& grid,
                               std::span<const double> p_list) {
  for (double p : p_list) {
    if (!(p >= 1.0)) throw DomainError("deviation_norms: p must be >= 1");
  }
  const auto& k = kernels::active();
  const int n = grid.n_cells();
  const double dx = grid.dx();
  const std::size_t ne = unique_edges(grid);

  DeviationNorms out;
  out.p.assign(p_list.begin(), p_list.end());
  out.lp.reserve(p_list.size());
  for (double p : p_list) {
    double value = 0.0;
    if (std::isinf(p)) {
      value = std::max({k.max_abs_dev(state.v.data(), 1.0, n),
                        k.max_abs_dev(state.theta.data(), 1.0, n),
                        k.max_abs_dev(state.u.data(), 0.0, ne)});
    } else if (p == 2.0) {
      const double sum = k.sum_sq_dev(state.v.data(), 1.0, n) +
                         k.sum_sq_dev(state.theta.data(), 1.0, n) +
                         k.sum_sq_dev(state.u.data(), 0.0, ne);
      value = std::sqrt(sum * dx);
    } else {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += std::pow(std::fabs(state.v[i] - 1.0), p) + std::pow(std::fabs(state.theta[i] - 1.0), p);
      }
      for (std::size_t j = 0; j < ne; ++j) sum += std::pow(std::fabs(state.u[j]), p);
      value = std::pow(sum * dx, 1.0 / p);
    }
    out.lp.push_back(value);
  }

  // Gradients: cell-to-cell differences at interior edges, ghost-based
  // one-sided differences at the window ends, exact per-cell u_x.
  const BoundaryGhosts& g = state.ghosts;
  double sq = k.sum_sq_diff(state.v.data(), n) + k.sum_sq_diff(state.theta.data(), n) +
              k.sum_sq_diff(state.u.data(), n + 1);
  auto add = [&sq](double d) { sq += d * d; };
  add(state.v[0] - g.v_left);
  add(state.theta[0] - g.theta_left);
  if (!grid.periodic()) {
    add(g.v_right - state.v[n - 1]);
    add(g.theta_right - state.theta[n - 1]);
  }
  out.l2_grad = std::sqrt(sq / dx);
  return out;
}

FluxDecayReference FluxDecayReference::from_initial(const State& initial, int probe_cell) {
  FluxDecayReference ref;
  ref.u0 = initial.u;
  if (probe_cell < 0 || probe_cell >= static_cast<int>(initial.v.size())) {
    throw DomainError("flux decay probe cell out of range");
  }
  ref.v0_probe = initial.v[probe_cell];
  ref.probe_cell = probe_cell;
  return ref;
}

FluxDecayRecord flux_decay_probe(const State& state, const Grid& grid, const GasParams& params,
                                 int N, const FluxDecayRecord& accum,
                                 const FluxDecayReference& reference) {
  const int n = grid.n_cells();
  if (N < 0 || N >= n) {
    throw DomainError("flux_decay_probe: N = " + std::to_string(N) + " outside [0, " +
                      std::to_string(n) + ")");
  }
  if (reference.u0.size() != state.u.size()) {
    throw DomainError("flux_decay_probe: reference does not match the grid");
  }
  const double dx = grid.dx();
  FluxDecayRecord out = accum;
  out.N = N;
  const double ux = (state.u[N + 1] - state.u[N]) / dx;
  const double sigma = (params.mu_tilde() * ux - params.R() * state.theta[N]) / state.v[N];
  if (!accum.started) {
    out.started = true;
    out.log_Y_N = 0.0;
  } else {
    out.log_Y_N += 0.5 * (accum.sigma_N + sigma) * (state.time - accum.time);
  }
  out.sigma_N = sigma;
  out.time = state.time;

  // int from the center of cell N to the center of the probe cell: the edges
  // strictly between them each carry one dx of mass.
  const int P = reference.probe_cell;
  double integral = 0.0;
  if (P > N) {
    for (int j = N + 1; j <= P; ++j) integral += state.u[j] - reference.u0[j];
  } else {
    for (int j = P + 1; j <= N; ++j) integral -= state.u[j] - reference.u0[j];
  }
  out.D_N_at_x = reference.v0_probe * std::exp(integral * dx);
  return out;
}

BoundSummary bound_monitor(std::span<const DiagnosticsRecord> records) {
  if (records.empty()) throw DomainError("bound_monitor: empty record stream");
  BoundSummary s{records[0].inf_v, records[0].sup_v, records[0].inf_theta, records[0].sup_theta};
  for (const auto& r : records) {
    s.min_inf_v = std::min(s.min_inf_v, r.inf_v);
    s.max_sup_v = std::max(s.max_sup_v, r.sup_v);
    s.min_inf_theta = std::min(s.min_inf_theta, r.inf_theta);
    s.max_sup_theta = std::max(s.max_sup_theta, r.sup_theta);
  }
  return s;
}

JensenCheck jensen_check(const State& state, const Grid& grid, const GasParams& params,
                         double energy) {
  JensenCheck out;
  const double dx = grid.dx();
  const int block = std::max(1, static_cast<int>(std::lround(1.0 / dx)));
  const double mass = block * dx;
  const auto [a1_v, a2_v] = gas::jensen_roots(std::max(0.0, energy) / (params.R() * mass));
  const auto [a1_t, a2_t] = gas::jensen_roots(std::max(0.0, energy) / (params.c_v() * mass));

  const int n = grid.n_cells();
  for (double x0 = std::ceil(grid.x_left() - 1e-9); x0 + 1.0 <= grid.x_right() + 1e-9; x0 += 1.0) {
    const int start = static_cast<int>(std::lround((x0 - grid.x_left()) / dx));
    if (start < 0 || start + block > n) continue;
    double sv = 0.0;
    double st = 0.0;
    for (int i = start; i < start + block; ++i) {
      sv += state.v[i];
      st += state.theta[i];
    }
    const double mv = sv / block;
    const double mt = st / block;
    out.max_violation = std::max({out.max_violation, a1_v - mv, mv - a2_v, a1_t - mt, mt - a2_t});
    ++out.windows;
  }
  return out;
}

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double l2 = nan;
  double linf = nan;
  for (std::size_t k = 0; k < r.norms.p.size(); ++k) {
    if (r.norms.p[k] == 2.0) l2 = r.norms.lp[k];
    if (std::isinf(r.norms.p[k])) linf = r.norms.lp[k];
  }
  const double fields[] = {r.time,      r.energy_entropy, r.dissipation_V, r.cum_dissipation,
                           r.inf_v,     r.sup_v,          r.inf_theta,     r.sup_theta,
                           l2,          linf,             r.norms.l2_grad, r.sigma_N,
                           r.log_Y_N};
  char buf[64];
  bool first = true;
  for (double f : fields) {
    std::snprintf(buf, sizeof buf, "%.17g", f);
    if (!first) os << ',';
    os << buf;
    first = false;
  }
  os << '\n';
}

DiagnosticsRecorder::DiagnosticsRecorder(GasParams params, Options options)
    : DiagnosticsRecorder(params, std::move(options), nullptr) {}

DiagnosticsRecorder::DiagnosticsRecorder(GasParams params, Options options, std::ostream* csv)
    : params_(params), options_(std::move(options)), csv_(csv) {
  auto has = [this](double p) {
    return std::find(options_.p_list.begin(), options_.p_list.end(), p) != options_.p_list.end();
  };
  if (!has(2.0)) options_.p_list.push_back(2.0);
  if (!has(std::numeric_limits<double>::infinity())) {
    options_.p_list.push_back(std::numeric_limits<double>::infinity());
  }
  if (csv_ != nullptr) *csv_ << kDiagnosticsCsvHeader << '\n';
}

const DiagnosticsRecord& DiagnosticsRecorder::last() const {
  if (observations_ == 0) throw DomainError("DiagnosticsRecorder: nothing observed yet");
  return last_;
}

void DiagnosticsRecorder::observe(const State& state, const Grid& grid, const StepReport* report) {
  const int n = grid.n_cells();
  if (observations_ == 0) {
    if (options_.probe_N < 0) options_.probe_N = n / 2;
    if (options_.probe_x_cell < 0) options_.probe_x_cell = options_.probe_N;
    reference_ = FluxDecayReference::from_initial(state, options_.probe_x_cell);
  }

  DiagnosticsRecord r;
  r.time = state.time;
  r.energy_entropy = energy_entropy(state, grid, params_);
  r.dissipation_V = dissipation(state, grid, params_);
  const auto [vmin, vmax] = std::minmax_element(state.v.begin(), state.v.end());
  const auto [tmin, tmax] = std::minmax_element(state.theta.begin(), state.theta.end());
  r.inf_v = *vmin;
  r.sup_v = *vmax;
  r.inf_theta = *tmin;
  r.sup_theta = *tmax;
  r.norms = deviation_norms(state, grid, options_.p_list);
  r.rejected_attempts = report != nullptr ? report->rejected_attempts : 0;

  flux_ = flux_decay_probe(state, grid, params_, options_.probe_N, flux_, reference_);
  r.sigma_N = flux_.sigma_N;
  r.log_Y_N = flux_.log_Y_N;
  r.D_N_at_x = flux_.D_N_at_x;

  if (observations_ == 0) {
    e0_ = r.energy_entropy;
    r.cum_dissipation = 0.0;
  } else {
    r.cum_dissipation =
        last_.cum_dissipation + 0.5 * (last_.dissipation_V + r.dissipation_V) * (r.time - last_.time);
  }
  r.e0 = e0_;

  if (options_.check_jensen) {
    const JensenCheck jc = jensen_check(state, grid, params_, r.energy_entropy);
    max_jensen_violation_ = std::max(max_jensen_violation_, jc.max_violation);
  }

  if (csv_ != nullptr) write_diagnostics_row(*csv_, r);
  if (options_.keep_records) records_.push_back(r);
  last_ = std::move(r);
  ++observations_;
}

void DiagnosticsRecorder::finish(const State&, const Grid&) {
  if (csv_ != nullptr) csv_->flush();
}

}  // namespace lagns

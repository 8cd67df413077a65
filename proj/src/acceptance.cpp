#include "lagns/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "lagns/diagnostics.hpp"
#include "lagns/gas.hpp"
#include "lagns/profiles.hpp"
#include "lagns/solver.hpp"
#include "lagns/verification.hpp"

namespace lagns {
namespace {

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Large-data reference run: Cauchy window of length 80, dx = 0.05, composite
// data of width 1.5, t_end = 50, every accepted step observed.
struct ReferenceRun {
  double beta = 1.0;
  std::vector<DiagnosticsRecord> records;
  double jensen_violation = 0.0;
  std::string failure;
};

ReferenceRun reference_run(double beta) {
  ReferenceRun out;
  out.beta = beta;
  ProfileSpec profile;
  profile.kind = ProfileKind::LargeDataComposite;
  profile.width = 1.5;
  const ProblemSetup setup{{ProblemVariant::Cauchy, 80.0}, 1600, make_profiles(profile)};
  SchemeConfig scheme;
  scheme.cfl_safety = 0.05;
  scheme.dt_initial = 1.0;
  DiagnosticsRecorder::Options options;
  options.check_jensen = true;
  DiagnosticsRecorder recorder(GasParams::normalized(beta), options);
  Observer* observers[] = {&recorder};
  try {
    run(setup, GasParams::normalized(beta), scheme, 50.0, observers);
  } catch (const std::exception& e) {
    out.failure = e.what();
  }
  out.records = recorder.records();
  out.jensen_violation = recorder.max_jensen_violation();
  return out;
}

CriterionResult equilibrium_fixed_point() {
  CriterionResult r{1, "equilibrium-fixed-point", true, ""};
  double worst = 0.0;
  for (ProblemVariant variant : {ProblemVariant::Cauchy, ProblemVariant::HalfLineInsulated,
                                 ProblemVariant::HalfLineIsothermal, ProblemVariant::Periodic}) {
    const Grid grid({variant, 10.0}, 100);
    State state = build_initial_state(grid, make_profiles({}));
    const GasParams params = GasParams::normalized(1.0);
    SemiImplicitStepper stepper(grid, params, SchemeConfig{});
    for (int k = 0; k < 10000; ++k) stepper.advance(state);
    double dev = 0.0;
    for (double v : state.v) dev = std::max(dev, std::fabs(v - 1.0));
    for (double t : state.theta) dev = std::max(dev, std::fabs(t - 1.0));
    for (double u : state.u) dev = std::max(dev, std::fabs(u));
    worst = std::max(worst, dev);
  }
  r.pass = worst < 1e-12;
  r.detail = fmt("max deviation after 1e4 steps over 4 variants = %.3e (< 1e-12)", worst);
  return r;
}

bool reference_ok(const ReferenceRun& run, CriterionResult& r) {
  if (!run.failure.empty() || run.records.empty()) {
    r.pass = false;
    r.detail += fmt("beta=%g run failed: %s; ", run.beta, run.failure.c_str());
    return false;
  }
  return true;
}

CriterionResult energy_inequality(const std::vector<ReferenceRun>& runs) {
  CriterionResult r{2, "energy-entropy-inequality", true, ""};
  for (const ReferenceRun& run : runs) {
    if (!reference_ok(run, r)) continue;
    const double e0 = run.records.front().e0;
    double worst_total = -std::numeric_limits<double>::infinity();
    double worst_rise = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < run.records.size(); ++k) {
      const DiagnosticsRecord& rec = run.records[k];
      worst_total = std::max(worst_total, (rec.energy_entropy + rec.cum_dissipation) / e0);
      if (k > 0) {
        worst_rise = std::max(worst_rise, (rec.energy_entropy - run.records[k - 1].energy_entropy) / e0);
      }
    }
    const bool ok = worst_total <= 1.001 && worst_rise <= 1e-9;
    r.pass = r.pass && ok;
    r.detail += fmt("beta=%g max (E+cumV)/e0=%.6f (<=1.001) max step rise/e0=%.2e (<=1e-9); ",
                    run.beta, worst_total, worst_rise);
  }
  return r;
}

CriterionResult uniform_bounds(const std::vector<ReferenceRun>& runs) {
  CriterionResult r{3, "uniform-bounds", true, ""};
  for (const ReferenceRun& run : runs) {
    if (!reference_ok(run, r)) continue;
    const BoundSummary all = bound_monitor(run.records);
    std::size_t mid = 0;
    while (mid < run.records.size() && run.records[mid].time <= 25.0) ++mid;
    const BoundSummary early = bound_monitor(std::span(run.records).first(std::max<std::size_t>(mid, 1)));
    auto change = [](double a, double b) { return std::fabs(b - a) / std::fabs(a); };
    const double drift = std::max({change(early.min_inf_v, all.min_inf_v),
                                   change(early.max_sup_v, all.max_sup_v),
                                   change(early.min_inf_theta, all.min_inf_theta),
                                   change(early.max_sup_theta, all.max_sup_theta)});
    const bool ok = all.min_inf_v > 0.05 && all.max_sup_v < 20.0 && all.min_inf_theta > 0.05 &&
                    all.max_sup_theta < 20.0 && drift < 0.05;
    r.pass = r.pass && ok;
    r.detail += fmt("beta=%g v in [%.4f, %.4f] theta in [%.4f, %.4f] (in (0.05, 20)) "
                    "extrema drift over [25,50]=%.2e (<0.05); ",
                    run.beta, all.min_inf_v, all.max_sup_v, all.min_inf_theta, all.max_sup_theta, drift);
  }
  return r;
}

CriterionResult large_time_decay(const std::vector<ReferenceRun>& runs) {
  CriterionResult r{4, "large-time-decay", true, ""};
  const double inf = std::numeric_limits<double>::infinity();
  for (const ReferenceRun& run : runs) {
    if (!reference_ok(run, r)) continue;
    double max_linf = 0.0;
    double max_grad = 0.0;
    double rise = -inf;
    for (std::size_t k = 0; k < run.records.size(); ++k) {
      const DiagnosticsRecord& rec = run.records[k];
      max_linf = std::max(max_linf, rec.norms.at(inf));
      max_grad = std::max(max_grad, rec.norms.l2_grad);
      if (k > 0 && rec.time > 37.5) {
        const DiagnosticsRecord& prev = run.records[k - 1];
        rise = std::max({rise, rec.norms.at(inf) - prev.norms.at(inf), rec.norms.l2_grad - prev.norms.l2_grad});
      }
    }
    const DiagnosticsRecord& last = run.records.back();
    const double linf_ratio = last.norms.at(inf) / max_linf;
    const double grad_ratio = last.norms.l2_grad / max_grad;
    const bool ok = std::fabs(last.time - 50.0) < 1e-9 && linf_ratio < 0.2 && grad_ratio < 0.2 &&
                    rise <= 1e-6;
    r.pass = r.pass && ok;
    r.detail += fmt("beta=%g Linf(50)/max=%.4f L2grad(50)/max=%.4f (<0.2) last-quarter rise=%.2e (<=1e-6); ",
                    run.beta, linf_ratio, grad_ratio, rise);
  }
  return r;
}

CriterionResult flux_decay(const std::vector<ReferenceRun>& runs) {
  CriterionResult r{5, "effective-flux-decay", true, ""};
  for (const ReferenceRun& run : runs) {
    if (!reference_ok(run, r)) continue;
    bool strictly = true;
    for (std::size_t k = 1; k < run.records.size(); ++k) {
      if (run.records[k].time > 5.0 && !(run.records[k].log_Y_N < run.records[k - 1].log_Y_N)) {
        strictly = false;
      }
    }
    const double final_log = run.records.back().log_Y_N;
    const bool ok = final_log < -10.0 && strictly;
    r.pass = r.pass && ok;
    r.detail += fmt("beta=%g log_Y_N(50)=%.3f (<-10) strictly decreasing after t=5: %s; ", run.beta,
                    final_log, strictly ? "yes" : "no");
  }
  return r;
}

CriterionResult jensen_consistency(const std::vector<ReferenceRun>& runs) {
  CriterionResult r{6, "jensen-consistency", true, ""};
  for (const ReferenceRun& run : runs) {
    if (!reference_ok(run, r)) continue;
    const bool ok = run.jensen_violation <= 1e-8;
    r.pass = r.pass && ok;
    r.detail += fmt("beta=%g max excursion outside [a1, a2]=%.2e (<=1e-8); ", run.beta,
                    run.jensen_violation);
  }
  return r;
}

double min_order(const std::vector<ConvergenceRow>& rows) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rows.size(); ++k) m = std::min(m, rows[k].order);
  return m;
}

CriterionResult convergence() {
  CriterionResult r{7, "convergence-order", true, ""};
  for (const char* name : {"mms1", "mms2"}) {
    const ManufacturedCase mms = manufactured_case(name, 1.0);
    ConvergenceOptions spatial;
    spatial.refinement = Refinement::Spatial;
    ConvergenceOptions temporal;
    temporal.refinement = Refinement::Temporal;
    temporal.base_cells = 512;
    temporal.base_dt = 0.004;
    try {
      const double s = min_order(convergence_study(mms, spatial));
      const double t = min_order(convergence_study(mms, temporal));
      r.pass = r.pass && s >= 1.9 && t >= 0.9;
      r.detail += fmt("%s spatial order=%.3f (>=1.9) temporal order=%.3f (>=0.9); ", name, s, t);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail += fmt("%s failed: %s; ", name, e.what());
    }
  }
  return r;
}

CriterionResult oracle_equivalence() {
  CriterionResult r{8, "explicit-oracle-equivalence", true, ""};
  for (double beta : {1.0, 2.0}) {
    ProfileSpec profile;
    profile.kind = ProfileKind::GaussianBump;
    profile.field = Field::Theta;
    profile.amplitude = 0.5;
    const ProblemSetup setup{{ProblemVariant::Cauchy, 16.0}, 64, make_profiles(profile)};
    try {
      const double d = oracle_compare(setup, GasParams::normalized(beta), 0.1);
      r.pass = r.pass && d < 1e-4;
      r.detail += fmt("beta=%g max discrepancy=%.3e (<1e-4); ", beta, d);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail += fmt("beta=%g failed: %s; ", beta, e.what());
    }
  }
  return r;
}

CriterionResult cold_spot() {
  CriterionResult r{9, "degenerate-cold-spot", true, ""};
  ProfileSpec profile;
  profile.kind = ProfileKind::ColdSpot;
  profile.theta_min = 0.1;
  const ProblemSetup setup{{ProblemVariant::Cauchy, 40.0}, 800, make_profiles(profile)};
  const GasParams params = GasParams::normalized(2.5);
  DiagnosticsRecorder::Options options;
  DiagnosticsRecorder recorder(params, options);
  Observer* observers[] = {&recorder};
  try {
    run(setup, params, SchemeConfig{}, 20.0, observers);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = fmt("run failed: %s", e.what());
    return r;
  }
  const auto& recs = recorder.records();
  int rejections = 0;
  int decreases = 0;
  for (std::size_t k = 1; k < recs.size(); ++k) {
    if (recs[k - 1].time < 1.0) continue;
    rejections += recs[k].rejected_attempts;
    if (!(recs[k].inf_theta > recs[k - 1].inf_theta)) ++decreases;
  }
  const bool reached = std::fabs(recs.back().time - 20.0) < 1e-9;
  r.pass = reached && rejections == 0 && decreases == 0;
  r.detail = fmt("reached t=20: %s, rejections after t=1: %d (=0), non-increasing min theta steps: %d (=0), "
                 "min theta %.4f -> %.4f",
                 reached ? "yes" : "no", rejections, decreases, recs.front().inf_theta,
                 recs.back().inf_theta);
  return r;
}

// Plain bisection on y - ln y - 1 = e0 over (0, 1].
double lower_root_oracle(double e0) {
  double lo = 1e-300;
  double hi = 1.0;
  for (int k = 0; k < 2000 && lo < hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid - std::log(mid) - 1.0 > e0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CriterionResult root_solver() {
  CriterionResult r{10, "jensen-root-solver", true, ""};
  const double e0 = 1.0 - std::log(2.0);
  const auto [a1, a2] = gas::jensen_roots(e0);
  const double oracle = lower_root_oracle(e0);
  r.pass = std::fabs(a2 - 2.0) < 1e-10 && std::fabs(a1 - oracle) < 1e-10;
  r.detail = fmt("alpha2=%.15f |alpha2-2|=%.2e alpha1=%.15f |alpha1-oracle|=%.2e (<1e-10)", a2,
                 std::fabs(a2 - 2.0), a1, std::fabs(a1 - oracle));
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  auto wanted = [&](int id) {
    return options.only.empty() || std::find(options.only.begin(), options.only.end(), id) != options.only.end();
  };
  const auto policy = options.parallel ? std::launch::async : std::launch::deferred;

  const bool need_reference = wanted(2) || wanted(3) || wanted(4) || wanted(5) || wanted(6);
  std::vector<std::future<ReferenceRun>> reference;
  if (need_reference) {
    for (double beta : {0.5, 1.0, 2.5}) reference.push_back(std::async(policy, reference_run, beta));
  }

  std::map<int, std::future<CriterionResult>> independent;
  const std::pair<int, CriterionResult (*)()> standalone[] = {
      {1, equilibrium_fixed_point}, {7, convergence}, {8, oracle_equivalence},
      {9, cold_spot},               {10, root_solver}};
  for (const auto& [id, fn] : standalone) {
    if (wanted(id)) independent.emplace(id, std::async(policy, fn));
  }

  std::vector<ReferenceRun> runs;
  for (auto& f : reference) runs.push_back(f.get());

  std::vector<CriterionResult> results;
  for (int id = 1; id <= 10; ++id) {
    if (!wanted(id)) continue;
    if (auto it = independent.find(id); it != independent.end()) {
      results.push_back(it->second.get());
      continue;
    }
    switch (id) {
      case 2:
        results.push_back(energy_inequality(runs));
        break;
      case 3:
        results.push_back(uniform_bounds(runs));
        break;
      case 4:
        results.push_back(large_time_decay(runs));
        break;
      case 5:
        results.push_back(flux_decay(runs));
        break;
      case 6:
        results.push_back(jensen_consistency(runs));
        break;
    }
  }
  for (CriterionResult& r : results) {
    while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
  }
  return results;
}

void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    os << (r.pass ? "PASS " : "FAIL ") << (r.id < 10 ? " " : "") << r.id << ' ' << r.name << ": "
       << r.detail << '\n';
  }
}

}  // namespace lagns

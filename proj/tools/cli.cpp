#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "lagns/acceptance.hpp"
#include "lagns/config.hpp"
#include "lagns/diagnostics.hpp"
#include "lagns/errors.hpp"
#include "lagns/kernels.hpp"
#include "lagns/verification.hpp"

namespace lagns::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DeterminismError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  return os;
}

// t = 0, 1, 2, 4, 8, ... below t_end, then t_end.
std::vector<double> snapshot_times(double t_end) {
  std::vector<double> times{0.0};
  for (double t = 1.0; t < t_end; t *= 2.0) times.push_back(t);
  times.push_back(t_end);
  return times;
}

class SnapshotWriter : public Observer {
 public:
  SnapshotWriter(fs::path dir, std::vector<double> times) : dir_(std::move(dir)), times_(std::move(times)) {}

  void observe(const State& state, const Grid& grid, const StepReport*) override {
    if (std::find(times_.begin(), times_.end(), state.time) != times_.end()) write(state, grid);
  }
  void finish(const State& last, const Grid& grid) override {
    if (written_.count(last.time) == 0) write(last, grid);
  }
  const std::vector<std::string>& files() const { return files_; }

 private:
  void write(const State& s, const Grid& grid) {
    if (!written_.insert(s.time).second) return;
    const std::string name = "snapshot_t" + short_num(s.time) + ".csv";
    std::ofstream os = open_out(dir_ / name);
    os << "x,v,u,theta\n";
    for (int i = 0; i < grid.n_cells(); ++i) {
      os << num(grid.center(i)) << ',' << num(s.v[i]) << ',' << num(0.5 * (s.u[i] + s.u[i + 1])) << ','
         << num(s.theta[i]) << '\n';
    }
    files_.push_back(name);
  }

  fs::path dir_;
  std::vector<double> times_;
  std::set<double> written_;
  std::vector<std::string> files_;
};

// Running summary over the recorder's stream; must be registered after it.
class SummaryTracker : public Observer {
 public:
  explicit SummaryTracker(const DiagnosticsRecorder& recorder) : recorder_(recorder) {}

  void observe(const State&, const Grid&, const StepReport* report) override {
    const DiagnosticsRecord& r = recorder_.last();
    if (first_) {
      bounds_ = {r.inf_v, r.sup_v, r.inf_theta, r.sup_theta};
      first_ = false;
    } else {
      rise_ = std::max(rise_, r.energy_entropy - prev_energy_);
    }
    bounds_.min_inf_v = std::min(bounds_.min_inf_v, r.inf_v);
    bounds_.max_sup_v = std::max(bounds_.max_sup_v, r.sup_v);
    bounds_.min_inf_theta = std::min(bounds_.min_inf_theta, r.inf_theta);
    bounds_.max_sup_theta = std::max(bounds_.max_sup_theta, r.sup_theta);
    excess_ = std::max(excess_, r.energy_entropy + r.cum_dissipation - 1.001 * r.e0);
    prev_energy_ = r.energy_entropy;
    if (report != nullptr) {
      ++steps_;
      rejections_ += report->rejected_attempts;
    }
  }

  BoundSummary bounds_;
  double excess_ = -std::numeric_limits<double>::infinity();
  double rise_ = -std::numeric_limits<double>::infinity();
  long long steps_ = 0;
  long long rejections_ = 0;

 private:
  const DiagnosticsRecorder& recorder_;
  double prev_energy_ = 0.0;
  bool first_ = true;
};

void error_line(std::ostream& err, const std::string& kind, const std::string& message, int line = -1) {
  ordered_json e;
  e["error"] = kind;
  e["message"] = message;
  if (line >= 0) e["line"] = line;
  err << e.dump() << '\n';
}

std::string p_label(double p) { return std::isinf(p) ? "inf" : short_num(p); }

void require_determinism(const RunConfig& config) {
  const Grid grid(config.problem, config.n_cells);
  const State initial = build_initial_state(grid, make_profiles(config.profile));
  auto replay = [&] {
    State s = initial;
    SemiImplicitStepper stepper(grid, config.gas, config.scheme);
    for (int k = 0; k < 10 && s.time < config.t_end; ++k) stepper.advance(s);
    return s;
  };
  if (!(replay() == replay())) throw DeterminismError("replayed steps differ bitwise");
}

int cmd_run(const std::string& path, const std::string& out_dir, int cadence, bool seedless,
            std::ostream& out, std::ostream& err) {
  RunConfig config = load_config(path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (cadence > 0) config.cadence = cadence;
  validate(config);
  if (seedless) require_determinism(config);

  const fs::path dir = prepare_dir(config.output_dir);
  std::ofstream csv = open_out(dir / "diagnostics.csv");
  csv << kDiagnosticsCsvHeader << '\n';

  DiagnosticsRecorder::Options options;
  options.p_list = config.p_list;
  options.probe_N = config.probe_cell;
  options.probe_x_cell = config.probe_x_cell;
  options.keep_records = false;
  options.check_jensen = config.check_jensen;
  DiagnosticsRecorder recorder(config.gas, options, &csv);
  SummaryTracker tracker(recorder);
  const std::vector<double> times = snapshot_times(config.t_end);
  SnapshotWriter snapshots(dir, times);
  Observer* observers[] = {&recorder, &tracker, &snapshots};

  RunOptions run_options;
  run_options.cadence = config.cadence;
  run_options.stop_times = times;

  std::string status = "completed";
  std::string failure;
  try {
    run(config.setup(), config.gas, config.scheme, config.t_end, observers, run_options);
  } catch (const StepFailure& e) {
    status = "step_failure";
    failure = e.what();
  }

  const DiagnosticsRecord& last = recorder.last();
  ordered_json summary;
  summary["status"] = status;
  if (!failure.empty()) summary["failure"] = failure;
  summary["variant"] = std::string(to_string(config.problem.variant));
  summary["length"] = config.problem.truncation_length;
  summary["cells"] = config.n_cells;
  summary["beta"] = config.gas.beta();
  summary["profile"] = std::string(to_string(config.profile.kind));
  summary["t_end"] = config.t_end;
  summary["t_final"] = last.time;
  summary["steps"] = tracker.steps_;
  summary["rejected_attempts"] = tracker.rejections_;
  summary["e0"] = last.e0;
  summary["E_final"] = last.energy_entropy;
  summary["V_final"] = last.dissipation_V;
  summary["cumV_final"] = last.cum_dissipation;
  for (std::size_t k = 0; k < last.norms.p.size(); ++k) {
    summary["L" + p_label(last.norms.p[k]) + "_dev_final"] = last.norms.lp[k];
  }
  summary["L2_grad_final"] = last.norms.l2_grad;
  summary["min_inf_v"] = tracker.bounds_.min_inf_v;
  summary["max_sup_v"] = tracker.bounds_.max_sup_v;
  summary["min_inf_theta"] = tracker.bounds_.min_inf_theta;
  summary["max_sup_theta"] = tracker.bounds_.max_sup_theta;
  summary["sigma_N_final"] = last.sigma_N;
  summary["log_Y_N_final"] = last.log_Y_N;
  summary["D_N_at_x_final"] = last.D_N_at_x;
  summary["energy_excess_max"] = tracker.excess_;
  summary["energy_step_rise_max"] = tracker.rise_;
  summary["pass_completed"] = status == "completed";
  summary["pass_energy_inequality"] = tracker.excess_ <= 0.0 && tracker.rise_ <= 1e-9 * last.e0;
  summary["pass_positivity"] = tracker.bounds_.min_inf_v > 0.0 && tracker.bounds_.min_inf_theta > 0.0;
  if (config.check_jensen) {
    summary["jensen_max_violation"] = recorder.max_jensen_violation();
    summary["pass_jensen"] = recorder.max_jensen_violation() <= 1e-8;
  }
  summary["snapshots"] = snapshots.files();
  summary["kernel_isa"] = std::string(kernels::to_string(kernels::active().isa));
  summary["seedless_checked"] = seedless;

  std::ofstream js = open_out(dir / "summary.json");
  js << summary.dump(2) << '\n';

  out << "status=" << status << " t=" << num(last.time) << " E=" << num(last.energy_entropy)
      << " Linf_dev=" << num(last.norms.at(std::numeric_limits<double>::infinity()))
      << " out=" << dir.string() << '\n';
  if (!failure.empty()) {
    error_line(err, "step_failure", failure);
    return kFailure;
  }
  return kOk;
}

int cmd_verify(const std::string& mode, const std::string& path, const std::string& out_dir,
               std::ostream& out) {
  RunConfig config = load_config(path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  const fs::path dir = prepare_dir(config.output_dir);
  std::ostringstream table;

  if (mode == "convergence") {
    const ManufacturedCase mms = manufactured_case(config.verify.manufactured, config.gas.beta());
    ConvergenceOptions options;
    options.refinement = config.verify.refinement;
    options.levels = config.verify.levels;
    options.base_cells = config.verify.base_cells;
    options.base_dt = config.verify.base_dt;
    options.max_newton_lag = config.scheme.max_newton_lag;
    table << "level,dx,dt,error,order\n";
    for (const ConvergenceRow& r : convergence_study(mms, options)) {
      table << r.level << ',' << num(r.dx) << ',' << num(r.dt) << ',' << num(r.error) << ','
            << num(r.order) << '\n';
    }
  } else if (mode == "oracle") {
    OracleOptions options;
    options.dt = config.verify.oracle_dt;
    options.ratio = config.verify.oracle_ratio;
    options.max_newton_lag = config.scheme.max_newton_lag;
    const double d = oracle_compare(config.setup(), config.gas, config.t_end, options);
    table << "beta,dt,dt_ref,discrepancy\n"
          << num(config.gas.beta()) << ',' << num(options.dt) << ',' << num(options.dt / options.ratio)
          << ',' << num(d) << '\n';
  } else {
    TruncationOptions options;
    options.variant = config.problem.variant;
    options.dx = config.dx();
    options.profile = config.profile;
    options.scheme = config.scheme;
    options.t_end = config.t_end;
    options.interior_fraction = config.verify.interior_fraction;
    table << "L,discrepancy\n";
    for (const TruncationRow& r : truncation_study(config.gas, config.verify.lengths, options)) {
      table << num(r.length) << ',' << num(r.discrepancy) << '\n';
    }
  }

  std::ofstream csv = open_out(dir / (mode + ".csv"));
  csv << table.str();
  out << table.str();
  return kOk;
}

int cmd_accept(const std::vector<int>& only, bool serial, const std::string& out_dir, std::ostream& out) {
  AcceptanceOptions options;
  options.only = only;
  options.parallel = !serial;
  const std::vector<CriterionResult> results = run_acceptance(options);
  print_acceptance(out, results);
  bool all = true;
  ordered_json report = ordered_json::array();
  for (const CriterionResult& r : results) {
    all = all && r.pass;
    report.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  out << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << " (" << results.size() << " criteria)\n";
  if (!out_dir.empty()) {
    std::ofstream js = open_out(prepare_dir(out_dir) / "acceptance.json");
    js << report.dump(2) << '\n';
  }
  return all ? kOk : kFailure;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lagns: 1D viscous heat-conducting gas solver in Lagrangian mass coordinates", "lagns"};
  app.require_subcommand(1);

  std::string out_dir;
  int cadence = 0;
  bool seedless = false;
  std::string config_path;

  CLI::App* run = app.add_subcommand("run", "Run one configured problem");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run->add_option("--cadence", cadence, "Observe every N accepted steps (overrides run.cadence)")
      ->check(CLI::PositiveNumber);
  run->add_flag("--seedless", seedless, "Self-check that replayed steps are bitwise identical");

  std::string mode;
  CLI::App* verify = app.add_subcommand("verify", "Convergence, oracle or truncation study");
  verify->add_option("mode", mode, "convergence | oracle | truncation")
      ->required()
      ->check(CLI::IsMember({"convergence", "oracle", "truncation"}));
  verify->add_option("config", config_path, "Config file")->required();
  verify->add_option("--out", out_dir, "Output directory (overrides output.dir)");

  std::vector<int> only;
  bool serial = false;
  CLI::App* accept = app.add_subcommand("accept", "Run the acceptance suite");
  accept->add_option("--only", only, "Criterion ids to run")->delimiter(',');
  accept->add_flag("--serial", serial, "Run criteria one after another");
  accept->add_option("--out", out_dir, "Write acceptance.json here");

  CLI::App* version = app.add_subcommand("version", "Print version and kernel ISA");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.what());
    err << app.help();
    return kUsage;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, cadence, seedless, out, err);
    if (*verify) return cmd_verify(mode, config_path, out_dir, out);
    if (*accept) return cmd_accept(only, serial, out_dir, out);
    if (*version) {
      out << "lagns " << LAGNS_VERSION << " (kernels: " << kernels::to_string(kernels::active().isa)
          << ")\n";
      return kOk;
    }
  } catch (const ConfigError& e) {
    error_line(err, "config", e.what(), e.line());
    return kConfig;
  } catch (const StepFailure& e) {
    error_line(err, "step_failure", e.what());
    return kFailure;
  } catch (const InvalidInitialData& e) {
    error_line(err, "invalid_initial_data", e.what());
    return kFailure;
  } catch (const IncompatibleData& e) {
    error_line(err, "incompatible_data", e.what());
    return kFailure;
  } catch (const IoError& e) {
    error_line(err, "io", e.what());
    return kFailure;
  } catch (const DeterminismError& e) {
    error_line(err, "determinism", e.what());
    return kFailure;
  } catch (const std::exception& e) {
    error_line(err, "runtime", e.what());
    return kFailure;
  }
  err << app.help();
  return kUsage;
}

}  // namespace lagns::cli

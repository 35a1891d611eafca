// Command-line front end: builds the annealing problems, samples them with
// the exact / simulated-annealing / state-vector backends, and runs the
// hybrid tracking recursion. Every command is deterministic given --seed.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "annealtrack/adiabatic.hpp"
#include "annealtrack/assoc_cost.hpp"
#include "annealtrack/builders.hpp"
#include "annealtrack/extreme_stats.hpp"
#include "annealtrack/io.hpp"
#include "annealtrack/jpda.hpp"
#include "annealtrack/qubo.hpp"
#include "annealtrack/samplers.hpp"
#include "annealtrack/tracking.hpp"

namespace at = annealtrack;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;
constexpr int kExitAccuracy = 4;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string zero_pad(int value, int width) {
  std::ostringstream os;
  os.width(width);
  os.fill('0');
  os << value;
  return os.str();
}

at::IsingModel load_ising(const std::string& path) {
  const at::ProblemFile pf = at::problem_from_json(at::read_file(path));
  if (pf.kind == "ising") return pf.ising;
  return at::qubo_to_ising(pf.qubo);
}

// Prediction-only track states at scan k: priors at the standard initial
// kinematics, covariance diag(0.1, 0.1), stepped k times with no updates.
std::vector<at::TargetState> predicted_states(const at::ScenarioParams& p, int k) {
  const at::MotionModel motion = at::motion_matrices(p);
  std::vector<at::TargetState> states;
  for (const auto& x : at::init_targets(p))
    states.push_back(at::TargetState{x, at::default_initial_cov()});
  for (int step = 0; step < k; ++step)
    for (auto& s : states) s = at::predict(s, motion);
  return states;
}

struct BuildArgs {
  int k = 3;
  double gamma0 = 6.0;
  int m = 1;
  std::string scenario_path;
  int scan = 1;
  double c = 10.0;
  double ctilde = 1.0;
  std::string out_dir = ".";
};

int cmd_build_krooks(const BuildArgs& a) {
  const at::IsingModel model = at::krooks_ising(a.k);
  const std::string text = at::problem_to_json(model, at::krooks_labels(a.k));
  at::write_file_atomic((fs::path(a.out_dir) / ("krooks_k" + std::to_string(a.k) + ".json")).string(),
                        text + "\n");
  return 0;
}

int cmd_build_biased(const BuildArgs& a) {
  const at::IsingModel model = at::biased_krooks_ising(a.k, a.gamma0, a.m);
  const std::string text = at::problem_to_json(model, at::krooks_labels(a.k));
  const std::string name = "biased_krooks_k" + std::to_string(a.k) + "_m" + std::to_string(a.m) + ".json";
  at::write_file_atomic((fs::path(a.out_dir) / name).string(), text + "\n");
  return 0;
}

int cmd_build_mtda(const BuildArgs& a) {
  const at::ScenarioParams p = at::scenario_from_json(at::read_file(a.scenario_path));
  const auto frames = at::simulate_scenario(p, a.scan);
  const at::Scan& scan = frames.back().scan;
  const std::vector<at::TargetState> preds = predicted_states(p, a.scan);
  const at::CostMatrix cm = at::build_cost_matrix(preds, scan, p);
  const at::IsingModel model = at::mtda_ising(cm, a.c, a.ctilde);
  const at::SiteLabels labels = at::mtda_labels(cm.n_targets(), cm.n_meas());
  const std::string name = "mtda_scan" + std::to_string(a.scan) + ".json";
  at::write_file_atomic((fs::path(a.out_dir) / name).string(),
                        at::problem_to_json(model, labels) + "\n");

  std::ostringstream cost_csv;
  at::write_cost_csv(cost_csv, cm);
  at::write_file_atomic(
      (fs::path(a.out_dir) / ("costs_scan" + std::to_string(a.scan) + ".csv")).string(),
      cost_csv.str());
  return 0;
}

struct SampleArgs {
  std::string problem_path;
  std::string backend = "sa";
  int shots = 1000;
  double t_f_us = 20.0;
  std::uint64_t seed = 0;
  int runs = 1;
  std::string out_dir = ".";
};

int cmd_sample(const SampleArgs& a) {
  const at::IsingModel model = load_ising(a.problem_path);
  at::AnnealParams params;
  params.backend = at::backend_from_name(a.backend);
  params.n_shots = a.shots;
  params.t_f_us = a.t_f_us;
  for (int r = 0; r < a.runs; ++r) {
    params.seed = a.runs == 1 ? a.seed : at::derive_seed(a.seed, static_cast<std::uint64_t>(r));
    const at::RunResult result = at::run(model, params);
    const std::string stem = "run_" + zero_pad(r, 3);
    at::write_file_atomic((fs::path(a.out_dir) / (stem + ".json")).string(),
                          at::run_to_json(result, params) + "\n");
    at::write_file_atomic((fs::path(a.out_dir) / (stem + "_hist.csv")).string(),
                          at::histogram_to_csv(at::density_of_states(result)));
  }
  return 0;
}

struct TrackArgs {
  std::string scenario_path;
  int scans = 5;
  std::string backend = "exact";
  int shots = 1000;
  double t_f_us = 20.0;
  std::uint64_t seed = 0;
  double c = 10.0;
  double ctilde = 1.0;
  int top_k = at::kDefaultTopK;
  std::string out_dir = ".";
};

int cmd_track(const TrackArgs& a) {
  const at::ScenarioParams p = at::scenario_from_json(at::read_file(a.scenario_path));
  const auto frames = at::simulate_scenario(p, a.scans);
  const at::MotionModel motion = at::motion_matrices(p);

  at::AnnealParams params;
  params.backend = at::backend_from_name(a.backend);
  params.n_shots = a.shots;
  params.t_f_us = a.t_f_us;

  at::RecursionOptions opts;
  opts.c = a.c;
  opts.ctilde = a.ctilde;
  opts.top_k = a.top_k;

  std::vector<at::TargetState> states;
  for (const auto& x : at::init_targets(p))
    states.push_back(at::TargetState{x, at::default_initial_cov()});

  std::ostringstream lines;
  for (int k = 1; k <= a.scans; ++k) {
    const at::Scan& scan = frames[k - 1].scan;
    params.seed = at::derive_seed(a.seed, static_cast<std::uint64_t>(k));

    std::vector<at::TargetState> predicted(states.size());
    std::transform(states.begin(), states.end(), predicted.begin(),
                   [&](const at::TargetState& s) { return at::predict(s, motion); });

    auto [updated, diag] = at::recursion_step(states, scan, p, params, opts);
    lines << at::track_record_to_json(k, predicted, updated, diag, scan) << "\n";

    const at::CostMatrix cm = at::build_cost_matrix(predicted, scan, p);
    std::ostringstream cost_csv;
    at::write_cost_csv(cost_csv, cm);
    at::write_file_atomic(
        (fs::path(a.out_dir) / ("costs_scan" + std::to_string(k) + ".csv")).string(),
        cost_csv.str());

    states = std::move(updated);
  }
  at::write_file_atomic((fs::path(a.out_dir) / "track.jsonl").string(), lines.str());
  return 0;
}

struct SpectrumArgs {
  std::string problem_path;
  int grid = 101;
  int levels = 4;
  double t_f = 0.0;  // > 0 also evolves and appends occupation columns
  std::string out_dir = ".";
};

int cmd_spectrum(const SpectrumArgs& a) {
  const at::IsingModel model = load_ising(a.problem_path);
  const at::HamiltonianPair pair = at::build_pair(model);
  const std::vector<double> s_grid = at::linspace(0.0, 1.0, a.grid);

  std::ostringstream csv;
  csv << "s";
  for (int l = 0; l < a.levels; ++l) csv << ",E" << l;
  csv << ",gap\n";
  const at::SpectrumTrace trace = at::spectrum(pair, s_grid, a.levels);
  for (std::size_t g = 0; g < s_grid.size(); ++g) {
    csv << fmt(s_grid[g]);
    for (int l = 0; l < a.levels; ++l) csv << ',' << fmt(trace.energies(g, l));
    csv << ',' << fmt(trace.energies(g, 1) - trace.energies(g, 0)) << "\n";
  }
  at::write_file_atomic((fs::path(a.out_dir) / "spectrum.csv").string(), csv.str());

  if (a.t_f > 0.0) {
    // round the step count to a multiple of grid-1 so records land on s_grid
    const int chunks = std::max(1, a.grid - 1);
    int steps = at::suggest_steps(pair, a.t_f);
    steps = ((steps + chunks - 1) / chunks) * chunks;
    const at::Trajectory traj = at::evolve(pair, a.t_f, steps, a.levels, a.grid);

    std::ostringstream tcsv;
    tcsv << "s";
    for (int l = 0; l < a.levels; ++l) tcsv << ",E" << l;
    for (int l = 0; l < a.levels; ++l) tcsv << ",P" << l;
    tcsv << "\n";
    for (int g = 0; g < traj.occupations.rows(); ++g) {
      tcsv << fmt(traj.s_grid[g]);
      for (int l = 0; l < a.levels; ++l) tcsv << ',' << fmt(traj.energies(g, l));
      for (int l = 0; l < a.levels; ++l) tcsv << ',' << fmt(traj.occupations(g, l));
      tcsv << "\n";
    }
    at::write_file_atomic((fs::path(a.out_dir) / "trajectory.csv").string(), tcsv.str());
  }
  return 0;
}

struct SweepArgs {
  std::string problem_path;
  double t_f_min = 0.5;
  double t_f_max = 50.0;
  int points = 8;
  std::string out_dir = ".";
};

int cmd_sweep(const SweepArgs& a) {
  const at::IsingModel model = load_ising(a.problem_path);
  const at::HamiltonianPair pair = at::build_pair(model);
  const std::vector<double> metric_grid = at::linspace(0.0, 1.0, 51);

  // the metric rescales as 1/t_f, so one grid pass serves every point
  const double metric_at_unit_time = at::adiabatic_metric(pair, 1.0, metric_grid);

  // sweep points are independent; rows are assembled by index
  std::vector<double> t_fs(a.points), occs(a.points);
  for (int i = 0; i < a.points; ++i) {
    const double frac = a.points > 1 ? static_cast<double>(i) / (a.points - 1) : 0.0;
    t_fs[i] = a.t_f_min * std::pow(a.t_f_max / a.t_f_min, frac);
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int workers = std::min(at::thread_budget(), a.points);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < a.points; i += workers) {
        try {
          const at::Trajectory traj =
              at::evolve(pair, t_fs[i], at::suggest_steps(pair, t_fs[i]), 0, 2);
          occs[i] = at::ground_occupation(pair, traj.final_state);
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream csv;
  csv << "t_f,final_ground_occupation,adiabatic_metric\n";
  for (int i = 0; i < a.points; ++i)
    csv << fmt(t_fs[i]) << ',' << fmt(occs[i]) << ',' << fmt(metric_at_unit_time / t_fs[i]) << "\n";
  at::write_file_atomic((fs::path(a.out_dir) / "sweep.csv").string(), csv.str());
  return 0;
}

struct GumbelArgs {
  std::string runs_dir;
  std::string out_dir = ".";
};

int cmd_gumbel(const GumbelArgs& a) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(a.runs_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("run_", 0) == 0 &&
        entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw at::ArgumentError("no run_*.json files in " + a.runs_dir);

  std::vector<double> minima;
  minima.reserve(files.size());
  for (const auto& f : files) minima.push_back(at::run_minimum_from_json(at::read_file(f)));

  const at::GumbelParams fit = at::fit_gumbel_mle(minima);
  const double ll = at::gumbel_loglik(minima, fit);
  at::write_file_atomic((fs::path(a.out_dir) / "gumbel.json").string(),
                        at::gumbel_fit_to_json(fit, minima.size(), ll) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annealtrack: QUBO/Ising data association toolkit"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "Emit a problem JSON file");
  build->require_subcommand(1);
  auto* krooks = build->add_subcommand("krooks", "k-rooks constraint problem");
  krooks->add_option("--k", build_args.k, "board size")->required();
  krooks->add_option("--out", build_args.out_dir, "output directory");
  auto* biased = build->add_subcommand("biased-krooks", "k-rooks with diagonal bias");
  biased->add_option("--k", build_args.k, "board size")->required();
  biased->add_option("--gamma0", build_args.gamma0, "bias strength");
  biased->add_option("--m", build_args.m, "number of biased diagonal cells")->required();
  biased->add_option("--out", build_args.out_dir, "output directory");
  auto* mtda = build->add_subcommand("mtda", "association problem from a scenario");
  mtda->add_option("--scenario", build_args.scenario_path, "scenario JSON")->required();
  mtda->add_option("--scan", build_args.scan, "scan index (1-based)");
  mtda->add_option("--c", build_args.c, "quadratic constraint scale");
  mtda->add_option("--ctilde", build_args.ctilde, "linear constraint scale");
  mtda->add_option("--out", build_args.out_dir, "output directory");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Sample a problem file");
  sample->add_option("--problem", sample_args.problem_path, "problem JSON")->required();
  sample->add_option("--backend", sample_args.backend, "exact|sa|adiabatic");
  sample->add_option("--shots", sample_args.shots, "shots per run");
  sample->add_option("--anneal-time-us", sample_args.t_f_us, "anneal time");
  sample->add_option("--seed", sample_args.seed, "seed");
  sample->add_option("--runs", sample_args.runs, "number of runs");
  sample->add_option("--out", sample_args.out_dir, "output directory");

  TrackArgs track_args;
  auto* track = app.add_subcommand("track", "Run the hybrid tracking recursion");
  track->add_option("--scenario", track_args.scenario_path, "scenario JSON")->required();
  track->add_option("--scans", track_args.scans, "number of scans");
  track->add_option("--backend", track_args.backend, "exact|sa|adiabatic");
  track->add_option("--shots", track_args.shots, "shots per run");
  track->add_option("--anneal-time-us", track_args.t_f_us, "anneal time");
  track->add_option("--seed", track_args.seed, "seed");
  track->add_option("--c", track_args.c, "quadratic constraint scale");
  track->add_option("--ctilde", track_args.ctilde, "linear constraint scale");
  track->add_option("--top-k", track_args.top_k, "posterior support size");
  track->add_option("--out", track_args.out_dir, "output directory");

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "Instantaneous spectrum along s");
  spectrum->add_option("--problem", spectrum_args.problem_path, "problem JSON")->required();
  spectrum->add_option("--grid", spectrum_args.grid, "grid points in s");
  spectrum->add_option("--levels", spectrum_args.levels, "levels to record");
  spectrum->add_option("--t-f", spectrum_args.t_f, "also evolve at this anneal time");
  spectrum->add_option("--out", spectrum_args.out_dir, "output directory");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Final ground occupation vs anneal time");
  sweep->add_option("--problem", sweep_args.problem_path, "problem JSON")->required();
  sweep->add_option("--t-f-min", sweep_args.t_f_min, "smallest anneal time");
  sweep->add_option("--t-f-max", sweep_args.t_f_max, "largest anneal time");
  sweep->add_option("--points", sweep_args.points, "log-spaced anneal times");
  sweep->add_option("--out", sweep_args.out_dir, "output directory");

  GumbelArgs gumbel_args;
  auto* gumbel = app.add_subcommand("gumbel", "Fit run minima to a minimum Gumbel");
  gumbel->add_option("--runs", gumbel_args.runs_dir, "directory of run_*.json files")->required();
  gumbel->add_option("--out", gumbel_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (build->parsed()) {
      if (krooks->parsed()) return cmd_build_krooks(build_args);
      if (biased->parsed()) return cmd_build_biased(build_args);
      if (mtda->parsed()) return cmd_build_mtda(build_args);
    }
    if (sample->parsed()) return cmd_sample(sample_args);
    if (track->parsed()) return cmd_track(track_args);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (gumbel->parsed()) return cmd_gumbel(gumbel_args);
  } catch (const at::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const at::AccuracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const at::DegeneracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAccuracy;
  } catch (const at::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

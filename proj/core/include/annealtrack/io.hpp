#pragma once

#include <string>
#include <vector>

#include "annealtrack/builders.hpp"
#include "annealtrack/extreme_stats.hpp"
#include "annealtrack/jpda.hpp"
#include "annealtrack/qubo.hpp"
#include "annealtrack/samplers.hpp"
#include "annealtrack/tracking.hpp"

namespace annealtrack {

/// Either problem form behind one file schema:
/// {"n", "kind": "qubo"|"ising", "quadratic": [[i, j, v]...] with i <= j and
///  symmetry implied, "linear": [...], "offset": v}, 0-based indices.
struct ProblemFile {
  std::string kind;  // "qubo" or "ising"
  Qubo qubo;         // valid when kind == "qubo"
  IsingModel ising;  // valid when kind == "ising"
  bool has_labels = false;
  SiteLabels labels;
};

std::string problem_to_json(const Qubo& q);
std::string problem_to_json(const IsingModel& m);
std::string problem_to_json(const IsingModel& m, const SiteLabels& labels);
ProblemFile problem_from_json(const std::string& text);

std::string scenario_to_json(const ScenarioParams& p);
ScenarioParams scenario_from_json(const std::string& text);

/// {"backend", "seed", "n_s", "t_f_us", "e_hat0", "shots": [{"state",
///  "energy"}...], "histogram": [[E, frac]...]}; energies in problem units.
std::string run_to_json(const RunResult& r, const AnnealParams& p);
double run_minimum_from_json(const std::string& text);  // the "e_hat0" field

std::string gumbel_fit_to_json(const GumbelParams& g, std::size_t n_samples, double loglik);

/// One JSON line per scan of the tracking recursion.
std::string track_record_to_json(int k, const std::vector<TargetState>& predicted,
                                 const std::vector<TargetState>& updated,
                                 const StepDiagnostics& diag, const Scan& scan);

/// Histogram CSV with header "energy,fraction".
std::string histogram_to_csv(const std::vector<std::pair<double, double>>& dos);

std::string read_file(const std::string& path);
/// Write-then-rename so concurrent readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace annealtrack

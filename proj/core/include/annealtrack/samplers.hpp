#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annealtrack/qubo.hpp"

namespace annealtrack {

enum class Backend { exact, sa, adiabatic };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name);

/// One anneal-and-measure outcome.
struct Shot {
  BitVector state;
  double energy = 0.0;
};

/// Batch of independent shots; e_hat0 = min shot energy.
struct RunResult {
  std::vector<Shot> shots;
  double e_hat0 = 0.0;
  std::vector<BitVector> argmin_states;  // distinct states at e_hat0, ascending index
  Backend backend = Backend::sa;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxShotsPerRun = 10000;

struct AnnealParams {
  int n_shots = 1000;    // 1..10^4 per run
  double t_f_us = 20.0;  // anneal time; the SA backend maps it to sweeps
  std::uint64_t seed = 0;
  Backend backend = Backend::sa;

  void validate() const;
};

/// Run n_shots independent anneals. Backends:
///  - exact: brute-force ground set (n <= 24), shots drawn uniformly from it;
///  - sa: per-shot Metropolis anneal, geometric cooling, sweeps =
///    max(10, round(t_f_us));
///  - adiabatic: one state-vector evolution (n <= 12), Born-rule shots.
/// Shot i uses stream seed ^ i, so parallel and serial execution agree.
RunResult run(const IsingModel& model, const AnnealParams& p);

/// Worker count for shot/sweep parallelism: hardware concurrency, capped by
/// the ANNEALTRACK_THREADS environment variable.
int thread_budget();

/// Normalized energy histogram; energies merged within 1e-9, ascending.
std::vector<std::pair<double, double>> density_of_states(const RunResult& r);

/// Fraction of shots with |energy - e0| <= 1e-9.
double ground_state_fraction(const RunResult& r, double e0);

/// Fraction of the ground manifold reached by at least one shot.
double degenerate_coverage(const RunResult& r, const std::vector<BitVector>& ground_set);

}  // namespace annealtrack

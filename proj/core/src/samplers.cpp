#include "annealtrack/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

#include "annealtrack/adiabatic.hpp"
#include "annealtrack/rng.hpp"

namespace annealtrack {

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::exact: return "exact";
    case Backend::sa: return "sa";
    case Backend::adiabatic: return "adiabatic";
  }
  return "unknown";
}

Backend backend_from_name(const std::string& name) {
  if (name == "exact") return Backend::exact;
  if (name == "sa") return Backend::sa;
  if (name == "adiabatic") return Backend::adiabatic;
  throw ArgumentError("unknown backend '" + name + "'");
}

void AnnealParams::validate() const {
  if (n_shots < 1 || n_shots > kMaxShotsPerRun)
    throw ArgumentError("shots per run limited to 1..10^4");
  if (t_f_us <= 0.0) throw ArgumentError("anneal time must be positive");
}

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("ANNEALTRACK_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

namespace {

// Per-shot seeds are seed ^ shot_index; results are assembled by shot index,
// so the thread count never changes the output.
template <typename ShotFn>
std::vector<Shot> parallel_shots(int n_shots, std::uint64_t seed, ShotFn&& fn) {
  std::vector<Shot> shots(n_shots);
  const int workers = std::min(thread_budget(), n_shots);
  if (workers <= 1) {
    for (int i = 0; i < n_shots; ++i) shots[i] = fn(seed ^ static_cast<std::uint64_t>(i));
    return shots;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n_shots; i += workers)
        shots[i] = fn(seed ^ static_cast<std::uint64_t>(i));
    });
  }
  for (auto& t : pool) t.join();
  return shots;
}

Shot sa_shot(const IsingModel& model, double t_f_us, std::uint64_t shot_seed) {
  const int n = model.n();
  Rng rng(shot_seed);

  SpinVector sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = rng.uniform01() < 0.5 ? 1 : -1;

  // local fields phi = J sigma (diagonal included; excluded in the delta)
  Eigen::VectorXd sv(n);
  for (int i = 0; i < n; ++i) sv(i) = sigma[i];
  Eigen::VectorXd phi = model.J * sv;

  const double coef_scale =
      std::max(model.J.cwiseAbs().maxCoeff(), std::abs(model.mu) * model.h.cwiseAbs().maxCoeff());
  const double t_cold = 0.01;
  const double t_hot = std::max(2.0 * coef_scale, t_cold);
  const int sweeps = std::max(10, static_cast<int>(std::lround(t_f_us)));
  const double ratio = sweeps > 1 ? std::pow(t_cold / t_hot, 1.0 / (sweeps - 1)) : 1.0;

  // random site order; with sequential sweeps the zero-cost plateaus of the
  // constraint problems turn into deterministic cycles that never descend
  double temp = t_hot;
  for (int sweep = 0; sweep < sweeps; ++sweep, temp *= ratio) {
    for (int attempt = 0; attempt < n; ++attempt) {
      const int site = static_cast<int>(rng.uniform_int(n));
      const double s = sigma[site];
      const double local = phi(site) - model.J(site, site) * s;
      const double delta = 4.0 * s * local + 2.0 * model.mu * model.h(site) * s;
      if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temp)) {
        sigma[site] = static_cast<std::int8_t>(-sigma[site]);
        // phi change: J col * (sigma_new - sigma_old) = J col * 2*sigma_new
        phi += model.J.col(site) * (2.0 * static_cast<double>(sigma[site]));
      }
    }
  }

  Shot shot;
  shot.state = to_bits(sigma);
  shot.energy = ising_energy(model, sigma);
  return shot;
}

void finalize(RunResult& r) {
  r.e_hat0 = r.shots.front().energy;
  for (const Shot& s : r.shots) r.e_hat0 = std::min(r.e_hat0, s.energy);
  std::set<std::uint64_t> mins;
  for (const Shot& s : r.shots)
    if (std::abs(s.energy - r.e_hat0) <= kArgminTolerance) mins.insert(state_index(s.state));
  const int n = static_cast<int>(r.shots.front().state.size());
  for (std::uint64_t idx : mins) r.argmin_states.push_back(bits_of_index(idx, n));
}

}  // namespace

RunResult run(const IsingModel& model, const AnnealParams& p) {
  model.validate();
  p.validate();
  const int n = model.n();

  RunResult r;
  r.backend = p.backend;
  r.seed = p.seed;

  switch (p.backend) {
    case Backend::exact: {
      if (n > kBruteForceMaxVars)
        throw SizeLimitError("exact backend limited to n <= 24");
      const BruteForceResult ground = brute_force_solve(model);
      r.shots.resize(p.n_shots);
      for (int i = 0; i < p.n_shots; ++i) {
        Rng rng(p.seed ^ static_cast<std::uint64_t>(i));
        const auto pick = rng.uniform_int(ground.argmins.size());
        r.shots[i] = Shot{ground.argmins[pick], ground.e0};
      }
      break;
    }
    case Backend::sa: {
      r.shots = parallel_shots(p.n_shots, p.seed,
                               [&](std::uint64_t s) { return sa_shot(model, p.t_f_us, s); });
      break;
    }
    case Backend::adiabatic: {
      if (n > kMaxQubits)
        throw SizeLimitError("adiabatic backend limited to n <= 12 qubits");
      const HamiltonianPair pair = build_pair(model);
      const Trajectory traj =
          evolve(pair, p.t_f_us, suggest_steps(pair, p.t_f_us), /*tracked_levels=*/0,
                 /*records=*/2);
      r.shots.resize(p.n_shots);
      for (int i = 0; i < p.n_shots; ++i) {
        Rng rng(p.seed ^ static_cast<std::uint64_t>(i));
        const BitVector state = measure(traj.final_state, rng, 1).front();
        const double e = ising_energy(model, to_spins(state));
        r.shots[i] = Shot{state, e};
      }
      break;
    }
  }
  finalize(r);
  return r;
}

std::vector<std::pair<double, double>> density_of_states(const RunResult& r) {
  if (r.shots.empty()) throw ArgumentError("density_of_states: run has no shots");
  std::vector<double> energies;
  energies.reserve(r.shots.size());
  for (const Shot& s : r.shots) energies.push_back(s.energy);
  std::sort(energies.begin(), energies.end());

  std::vector<std::pair<double, double>> bins;
  const double w = 1.0 / static_cast<double>(energies.size());
  for (double e : energies) {
    if (!bins.empty() && std::abs(e - bins.back().first) <= kArgminTolerance)
      bins.back().second += w;
    else
      bins.emplace_back(e, w);
  }
  return bins;
}

double ground_state_fraction(const RunResult& r, double e0) {
  if (r.shots.empty()) return 0.0;
  std::size_t hits = 0;
  for (const Shot& s : r.shots)
    if (std::abs(s.energy - e0) <= kArgminTolerance) ++hits;
  return static_cast<double>(hits) / static_cast<double>(r.shots.size());
}

double degenerate_coverage(const RunResult& r, const std::vector<BitVector>& ground_set) {
  if (ground_set.empty()) throw ArgumentError("degenerate_coverage: empty ground set");
  std::set<std::uint64_t> ground;
  for (const BitVector& g : ground_set) ground.insert(state_index(g));
  std::set<std::uint64_t> seen;
  for (const Shot& s : r.shots) {
    const std::uint64_t idx = state_index(s.state);
    if (ground.count(idx)) seen.insert(idx);
  }
  return static_cast<double>(seen.size()) / static_cast<double>(ground.size());
}

}  // namespace annealtrack

#include "annealtrack/jpda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace annealtrack {

namespace {

AssociationPosterior normalize_posterior(std::vector<AssociationMatrix> states,
                                         const std::vector<TargetState>& preds, const Scan& scan,
                                         const ScenarioParams& p) {
  AssociationPosterior post;
  post.states = std::move(states);
  post.weights.resize(post.states.size());
  // log-space weights so far-off hypotheses cannot underflow the whole sum
  double max_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < post.states.size(); ++i) {
    post.weights[i] = association_log_likelihood(post.states[i], preds, scan, p);
    max_ll = std::max(max_ll, post.weights[i]);
  }
  if (!std::isfinite(max_ll)) throw EmptyPosteriorError("posterior mass vanished");
  double total = 0.0;
  for (double& w : post.weights) {
    w = std::exp(w - max_ll);
    total += w;
  }
  for (double& w : post.weights) w /= total;
  return post;
}

}  // namespace

AssociationPosterior soft_association(const RunResult& r, const std::vector<TargetState>& preds,
                                      const Scan& scan, const ScenarioParams& p, int top_k) {
  if (r.shots.empty()) throw ArgumentError("soft_association: run has no shots");
  if (top_k < 1) throw ArgumentError("soft_association: top_k must be >= 1");
  const int n_tgt = static_cast<int>(preds.size());
  const int n_meas = static_cast<int>(scan.measurements.size());

  // dedup feasible states, keeping each state's energy
  std::map<std::uint64_t, double> feasible;
  for (const Shot& shot : r.shots) {
    const std::uint64_t idx = state_index(shot.state);
    if (feasible.count(idx)) continue;
    const AssociationMatrix S = decode_state(shot.state, n_tgt, n_meas);
    if (is_feasible(S)) feasible.emplace(idx, shot.energy);
  }
  if (feasible.empty())
    throw EmptyPosteriorError("soft_association: no feasible state in the run");

  std::vector<std::pair<double, std::uint64_t>> ranked;  // (energy, state), stable order
  ranked.reserve(feasible.size());
  for (const auto& [idx, e] : feasible) ranked.emplace_back(e, idx);
  std::sort(ranked.begin(), ranked.end());
  if (static_cast<int>(ranked.size()) > top_k) ranked.resize(top_k);

  const int n_sites = (n_tgt + 1) * (n_meas + 1);
  std::vector<AssociationMatrix> states;
  states.reserve(ranked.size());
  for (const auto& [e, idx] : ranked)
    states.push_back(decode_state(bits_of_index(idx, n_sites), n_tgt, n_meas));
  return normalize_posterior(std::move(states), preds, scan, p);
}

AssociationPosterior exact_jpda_reference(const std::vector<TargetState>& preds, const Scan& scan,
                                          const ScenarioParams& p) {
  const int n_tgt = static_cast<int>(preds.size());
  const int n_meas = static_cast<int>(scan.measurements.size());
  if (n_tgt > kExactJpdaMaxSize || n_meas > kExactJpdaMaxSize)
    throw SizeLimitError("exact_jpda_reference limited to N, M <= 4");
  return normalize_posterior(enumerate_feasible(n_tgt, n_meas), preds, scan, p);
}

RunResult feasible_enumeration_run(const IsingModel& model, int n_targets, int n_meas) {
  RunResult r;
  r.backend = Backend::exact;
  r.seed = 0;
  for (const AssociationMatrix& S : enumerate_feasible(n_targets, n_meas)) {
    const BitVector x = encode_assoc(S);
    r.shots.push_back(Shot{x, ising_energy(model, to_spins(x))});
  }
  r.e_hat0 = r.shots.front().energy;
  for (const Shot& s : r.shots) r.e_hat0 = std::min(r.e_hat0, s.energy);
  for (const Shot& s : r.shots)
    if (std::abs(s.energy - r.e_hat0) <= kArgminTolerance) r.argmin_states.push_back(s.state);
  return r;
}

MarginalWeights marginal_probs(const AssociationPosterior& post) {
  if (post.states.empty()) throw ArgumentError("marginal_probs: empty posterior");
  MarginalWeights mw;
  mw.beta = Eigen::MatrixXd::Zero(post.states.front().S.rows(), post.states.front().S.cols());
  for (std::size_t k = 0; k < post.states.size(); ++k)
    mw.beta += post.weights[k] * post.states[k].S.cast<double>();
  return mw;
}

std::vector<TargetState> jpda_update(const std::vector<TargetState>& preds, const Scan& scan,
                                     const MarginalWeights& mw, double sigma_m2) {
  const int n_tgt = static_cast<int>(preds.size());
  const int n_meas = static_cast<int>(scan.measurements.size());
  if (mw.beta.rows() != n_tgt + 1 || mw.beta.cols() != n_meas + 1)
    throw ArgumentError("jpda_update: beta shape does not match scenario");

  std::vector<TargetState> updated(n_tgt);
  const Eigen::RowVector2d H(1.0, 0.0);
  for (int i = 1; i <= n_tgt; ++i) {
    const TargetState& pred = preds[i - 1];
    const double s_k = pred.cov(0, 0) + sigma_m2;
    const Eigen::Vector2d gain = pred.cov.col(0) / s_k;
    const Eigen::Matrix2d cov_cond =
        (Eigen::Matrix2d::Identity() - gain * H) * pred.cov;

    // mixture over j = 0 (prior) and each measurement's conditional update
    Eigen::Vector2d mean_mix = mw.beta(i, 0) * pred.mean;
    std::vector<Eigen::Vector2d> means(n_meas + 1);
    means[0] = pred.mean;
    for (int j = 1; j <= n_meas; ++j) {
      means[j] = pred.mean + gain * (scan.measurements[j - 1] - pred.mean(0));
      mean_mix += mw.beta(i, j) * means[j];
    }

    Eigen::Matrix2d cov_mix = mw.beta(i, 0) * pred.cov;
    for (int j = 1; j <= n_meas; ++j) cov_mix += mw.beta(i, j) * cov_cond;
    for (int j = 0; j <= n_meas; ++j) {
      const Eigen::Vector2d dm = means[j] - mean_mix;
      cov_mix += mw.beta(i, j) * dm * dm.transpose();
    }

    updated[i - 1].mean = mean_mix;
    updated[i - 1].cov = 0.5 * (cov_mix + cov_mix.transpose());
  }
  return updated;
}

std::pair<std::vector<TargetState>, StepDiagnostics> recursion_step(
    const std::vector<TargetState>& states, const Scan& scan, const ScenarioParams& p,
    const AnnealParams& ap, const RecursionOptions& opts) {
  const MotionModel motion = motion_matrices(p);
  std::vector<TargetState> preds(states.size());
  std::transform(states.begin(), states.end(), preds.begin(),
                 [&](const TargetState& s) { return predict(s, motion); });

  const int n_tgt = static_cast<int>(preds.size());
  const int n_meas = static_cast<int>(scan.measurements.size());
  const CostMatrix cm = build_cost_matrix(preds, scan, p);
  const IsingModel model = mtda_ising(cm, opts.c, opts.ctilde);

  // The exact backend stands in for an ideal annealer; on desk-scale problems
  // it enumerates the feasible set outright so the posterior is exhaustive.
  RunResult r;
  if (ap.backend == Backend::exact && n_tgt <= kExactJpdaMaxSize && n_meas <= kExactJpdaMaxSize) {
    r = feasible_enumeration_run(model, n_tgt, n_meas);
  } else {
    r = run(model, ap);
  }

  StepDiagnostics diag;
  diag.e_hat0 = r.e_hat0;
  diag.dos = density_of_states(r);

  std::map<std::uint64_t, double> feasible_energies;
  int infeasible = 0;
  for (const Shot& shot : r.shots) {
    const AssociationMatrix S = decode_state(shot.state, n_tgt, n_meas);
    if (is_feasible(S))
      feasible_energies.emplace(state_index(shot.state), shot.energy);
    else
      ++infeasible;
  }
  diag.n_infeasible_shots = infeasible;

  std::vector<TargetState> updated;
  if (feasible_energies.empty()) {
    diag.fell_back_to_missed = true;
    diag.hard_assignment = all_missed(n_tgt, n_meas);
    diag.marginals.beta = diag.hard_assignment.S.cast<double>();
    updated = preds;  // every target treated as missed: posterior = prediction
  } else {
    std::uint64_t best_idx = feasible_energies.begin()->first;
    double best_e = feasible_energies.begin()->second;
    for (const auto& [idx, e] : feasible_energies) {
      if (e < best_e - kArgminTolerance) {
        best_e = e;
        best_idx = idx;
      }
    }
    const int n_sites = (n_tgt + 1) * (n_meas + 1);
    diag.hard_assignment = decode_state(bits_of_index(best_idx, n_sites), n_tgt, n_meas);

    try {
      const AssociationPosterior post = soft_association(r, preds, scan, p, opts.top_k);
      diag.marginals = marginal_probs(post);
      updated = jpda_update(preds, scan, diag.marginals, p.sigma_m2);
    } catch (const EmptyPosteriorError&) {
      // total likelihood underflow: treat like the no-feasible-state case
      diag.fell_back_to_missed = true;
      diag.marginals.beta = all_missed(n_tgt, n_meas).S.cast<double>();
      updated = preds;
    }
  }
  return {std::move(updated), std::move(diag)};
}

}  // namespace annealtrack

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "annealtrack/assoc_cost.hpp"
#include "annealtrack/builders.hpp"
#include "annealtrack/samplers.hpp"

namespace annealtrack {

/// Likelihood-normalized weights over a set of feasible association matrices.
struct AssociationPosterior {
  std::vector<AssociationMatrix> states;
  std::vector<double> weights;  // sum to 1
};

/// beta(i, j) = posterior probability that S(i, j) = 1; rows i > 0 sum to 1.
struct MarginalWeights {
  Eigen::MatrixXd beta;
};

inline constexpr int kExactJpdaMaxSize = 4;
inline constexpr int kDefaultTopK = 64;

/// Decodes the run's shots, drops infeasible states, deduplicates, keeps the
/// top_k lowest-energy distinct feasible states and weights each by its
/// association likelihood. Throws EmptyPosteriorError when nothing feasible
/// was sampled.
AssociationPosterior soft_association(const RunResult& r, const std::vector<TargetState>& preds,
                                      const Scan& scan, const ScenarioParams& p,
                                      int top_k = kDefaultTopK);

/// Likelihood-weighted posterior over every feasible association matrix
/// (N, M <= 4).
AssociationPosterior exact_jpda_reference(const std::vector<TargetState>& preds, const Scan& scan,
                                          const ScenarioParams& p);

/// A run whose shots enumerate every feasible state of the model exactly
/// once; feeding it to soft_association reproduces the exact posterior.
RunResult feasible_enumeration_run(const IsingModel& model, int n_targets, int n_meas);

MarginalWeights marginal_probs(const AssociationPosterior& post);

/// Moment-matched Gaussian update: per-measurement Kalman conditionals mixed
/// by beta, plus the spread-of-means covariance term.
std::vector<TargetState> jpda_update(const std::vector<TargetState>& preds, const Scan& scan,
                                     const MarginalWeights& mw, double sigma_m2);

struct StepDiagnostics {
  double e_hat0 = 0.0;
  std::vector<std::pair<double, double>> dos;
  AssociationMatrix hard_assignment;
  int n_infeasible_shots = 0;
  bool fell_back_to_missed = false;  // no feasible state sampled
  MarginalWeights marginals;
};

struct RecursionOptions {
  double c = 10.0;
  double ctilde = 1.0;
  int top_k = kDefaultTopK;
};

/// One scan of the hybrid recursion: predict, build costs, anneal the
/// association model, form the posterior, update the tracks. With the exact
/// backend and a small feasible set the posterior is the exhaustive one.
std::pair<std::vector<TargetState>, StepDiagnostics> recursion_step(
    const std::vector<TargetState>& states, const Scan& scan, const ScenarioParams& p,
    const AnnealParams& ap, const RecursionOptions& opts = {});

}  // namespace annealtrack

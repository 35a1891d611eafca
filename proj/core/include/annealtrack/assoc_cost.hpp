#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "annealtrack/tracking.hpp"

namespace annealtrack {

/// Kalman innovation for a target/measurement pair.
struct Innovation {
  double d = 0.0;  // residual, m
  double s = 0.0;  // innovation variance, m^2
};

/// d = y - H mean; s = H cov H^T + sigma_m2, with H = [1 0].
Innovation innovation(const TargetState& pred, double y, double sigma_m2);

/// gamma = d^2 / (2 s) + log(2 pi s) / 2, the negative log of the predictive
/// measurement density.
double gamma_term(const Innovation& inn);

/// Negative-log-likelihood cost matrix over (N+1) x (M+1) association cells.
/// Row 0 is the clutter row, column 0 the missed-detection column.
struct CostMatrix {
  Eigen::MatrixXd gamma;
  double p_d = 0.0;
  double lambda = 0.0;
  double fov_len = 0.0;

  int n_targets() const { return static_cast<int>(gamma.rows()) - 1; }
  int n_meas() const { return static_cast<int>(gamma.cols()) - 1; }
};

CostMatrix build_cost_matrix(const std::vector<TargetState>& preds, const Scan& scan,
                             const ScenarioParams& p);

/// Binary association hypothesis; entry (0,0) carries no meaning and is kept
/// at zero in all decoded solutions.
struct AssociationMatrix {
  Eigen::MatrixXi S;

  int n_targets() const { return static_cast<int>(S.rows()) - 1; }
  int n_meas() const { return static_cast<int>(S.cols()) - 1; }
  bool operator==(const AssociationMatrix& o) const { return S == o.S; }
};

/// Every target row i > 0 sums to one over j >= 0, every measurement column
/// j > 0 sums to one over i >= 0.
bool is_feasible(const AssociationMatrix& S);

/// Joint association likelihood
///   L(S) = (lambda/|FoV|)^(M-n_d) (1-p_d)^(N-n_d) p_d^n_d
///          * prod over assigned pairs of N(y_j; H mean_i, s_i).
double association_likelihood(const AssociationMatrix& S, const std::vector<TargetState>& preds,
                              const Scan& scan, const ScenarioParams& p);

/// log L(S); stays finite where the product underflows a double.
double association_log_likelihood(const AssociationMatrix& S,
                                  const std::vector<TargetState>& preds, const Scan& scan,
                                  const ScenarioParams& p);

/// All feasible association matrices for N targets and M measurements,
/// deterministic order.
std::vector<AssociationMatrix> enumerate_feasible(int n_targets, int n_meas);

/// Hypothesis with every target missed and every measurement clutter.
AssociationMatrix all_missed(int n_targets, int n_meas);

/// CSV export, header row "i\\j,0,1,...".
void write_cost_csv(std::ostream& os, const CostMatrix& cm);

}  // namespace annealtrack

#include "annealtrack/assoc_cost.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace annealtrack {

Innovation innovation(const TargetState& pred, double y, double sigma_m2) {
  if (sigma_m2 <= 0.0) throw ArgumentError("measurement variance must be positive");
  Innovation inn;
  inn.d = y - pred.mean(0);
  inn.s = pred.cov(0, 0) + sigma_m2;
  return inn;
}

double gamma_term(const Innovation& inn) {
  if (inn.s <= 0.0) throw ArgumentError("innovation variance must be positive");
  return 0.5 * inn.d * inn.d / inn.s + 0.5 * std::log(2.0 * M_PI * inn.s);
}

CostMatrix build_cost_matrix(const std::vector<TargetState>& preds, const Scan& scan,
                             const ScenarioParams& p) {
  if (preds.empty()) throw ArgumentError("cost matrix needs at least one target");
  if (!(p.p_d > 0.0 && p.p_d < 1.0))
    throw ArgumentError("cost matrix needs 0 < p_d < 1");
  const int n_meas = static_cast<int>(scan.measurements.size());
  if (p.lambda <= 0.0 && n_meas > 0)
    throw ArgumentError("lambda = 0 with measurements present makes the clutter cost diverge");
  const int n_tgt = static_cast<int>(preds.size());

  CostMatrix cm;
  cm.p_d = p.p_d;
  cm.lambda = p.lambda;
  cm.fov_len = p.fov_length();
  cm.gamma.resize(n_tgt + 1, n_meas + 1);

  const double miss_cost = -std::log(1.0 - p.p_d);
  const double clutter_cost = n_meas > 0 ? std::log(cm.fov_len / p.lambda) : 0.0;
  cm.gamma.col(0).setConstant(miss_cost);
  for (int j = 1; j <= n_meas; ++j) {
    cm.gamma(0, j) = clutter_cost;
    for (int i = 1; i <= n_tgt; ++i) {
      const Innovation inn = innovation(preds[i - 1], scan.measurements[j - 1], p.sigma_m2);
      cm.gamma(i, j) = -std::log(p.p_d) + gamma_term(inn);
    }
  }
  return cm;
}

bool is_feasible(const AssociationMatrix& S) {
  const int rows = static_cast<int>(S.S.rows());
  const int cols = static_cast<int>(S.S.cols());
  if (rows < 2 || cols < 1) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (S.S(i, j) != 0 && S.S(i, j) != 1) return false;
  for (int i = 1; i < rows; ++i) {
    if (S.S.row(i).sum() != 1) return false;
  }
  for (int j = 1; j < cols; ++j) {
    if (S.S.col(j).sum() != 1) return false;
  }
  return true;
}

double association_log_likelihood(const AssociationMatrix& S,
                                  const std::vector<TargetState>& preds, const Scan& scan,
                                  const ScenarioParams& p) {
  if (!is_feasible(S)) throw FeasibilityError("association matrix violates assignment constraints");
  const int n_tgt = S.n_targets();
  const int n_meas = S.n_meas();
  if (n_tgt != static_cast<int>(preds.size()) || n_meas != static_cast<int>(scan.measurements.size()))
    throw ArgumentError("association matrix shape does not match scenario");

  int n_det = 0;
  double log_gaussians = 0.0;
  for (int i = 1; i <= n_tgt; ++i) {
    for (int j = 1; j <= n_meas; ++j) {
      if (S.S(i, j) == 1) {
        ++n_det;
        const Innovation inn = innovation(preds[i - 1], scan.measurements[j - 1], p.sigma_m2);
        log_gaussians += -0.5 * inn.d * inn.d / inn.s - 0.5 * std::log(2.0 * M_PI * inn.s);
      }
    }
  }
  double ll = (n_tgt - n_det) * std::log(1.0 - p.p_d) + n_det * std::log(p.p_d) + log_gaussians;
  if (n_meas > n_det) ll += (n_meas - n_det) * std::log(p.lambda / p.fov_length());
  return ll;
}

double association_likelihood(const AssociationMatrix& S, const std::vector<TargetState>& preds,
                              const Scan& scan, const ScenarioParams& p) {
  return std::exp(association_log_likelihood(S, preds, scan, p));
}

namespace {

void emit_feasible(int n_tgt, int n_meas, int target, std::vector<int>& assign,
                   std::vector<bool>& used, std::vector<AssociationMatrix>& out) {
  if (target > n_tgt) {
    AssociationMatrix S;
    S.S = Eigen::MatrixXi::Zero(n_tgt + 1, n_meas + 1);
    for (int i = 1; i <= n_tgt; ++i) S.S(i, assign[i]) = 1;
    for (int j = 1; j <= n_meas; ++j)
      if (!used[j]) S.S(0, j) = 1;
    out.push_back(std::move(S));
    return;
  }
  // column 0 first: missed detection sorts before any assignment
  assign[target] = 0;
  emit_feasible(n_tgt, n_meas, target + 1, assign, used, out);
  for (int j = 1; j <= n_meas; ++j) {
    if (used[j]) continue;
    used[j] = true;
    assign[target] = j;
    emit_feasible(n_tgt, n_meas, target + 1, assign, used, out);
    used[j] = false;
  }
}

}  // namespace

std::vector<AssociationMatrix> enumerate_feasible(int n_targets, int n_meas) {
  if (n_targets < 1 || n_meas < 0) throw ArgumentError("need n_targets >= 1 and n_meas >= 0");
  std::vector<AssociationMatrix> out;
  std::vector<int> assign(n_targets + 1, 0);
  std::vector<bool> used(n_meas + 1, false);
  emit_feasible(n_targets, n_meas, 1, assign, used, out);
  return out;
}

AssociationMatrix all_missed(int n_targets, int n_meas) {
  AssociationMatrix S;
  S.S = Eigen::MatrixXi::Zero(n_targets + 1, n_meas + 1);
  for (int i = 1; i <= n_targets; ++i) S.S(i, 0) = 1;
  for (int j = 1; j <= n_meas; ++j) S.S(0, j) = 1;
  return S;
}

void write_cost_csv(std::ostream& os, const CostMatrix& cm) {
  os << "i\\j";
  for (int j = 0; j <= cm.n_meas(); ++j) os << ',' << j;
  os << '\n';
  char buf[32];
  for (int i = 0; i <= cm.n_targets(); ++i) {
    os << i;
    for (int j = 0; j <= cm.n_meas(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", cm.gamma(i, j));
      os << ',' << buf;
    }
    os << '\n';
  }
}

}  // namespace annealtrack

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "annealtrack/errors.hpp"
#include "annealtrack/rng.hpp"

namespace annealtrack {

/// Gaussian track state (position m, velocity m/s).
struct TargetState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
};

/// One-dimensional linear-Gaussian scenario parameters. Defaults follow the
/// standard setup: p_d = 0.95, Poisson clutter with lambda = 1 uniform on a
/// 100 m field of view, sigma_M^2 = 0.1 m^2.
struct ScenarioParams {
  int n_targets = 1;
  double dt = 1.0;
  double sigma_p2 = 1.0;
  double sigma_m2 = 0.1;
  double p_d = 0.95;
  double lambda = 1.0;
  std::array<double, 2> fov{0.0, 100.0};
  std::uint64_t seed = 0;
  bool deterministic_truth = true;

  double fov_length() const { return fov[1] - fov[0]; }
  void validate() const;
};

/// Unlabeled measurement set at scan k (time k * dt).
struct Scan {
  int k = 0;
  std::vector<double> measurements;
};

struct MotionModel {
  Eigen::Matrix2d F;
  Eigen::Matrix2d Qproc;
};

/// F = [[1, dt], [0, 1]]; Qproc = sigma_p2 * [[dt^3/3, dt^2/2], [dt^2/2, dt]].
MotionModel motion_matrices(const ScenarioParams& p);

/// mean' = F mean; cov' = F cov F^T + Qproc.
TargetState predict(const TargetState& s, const MotionModel& m);

/// Ground-truth kinematics: target i (1-based) starts at ((i-1) m, 2(i-1) m/s).
std::vector<Eigen::Vector2d> init_targets(const ScenarioParams& p);

/// Initial track covariance; the scenario convention is diag(0.1, 0.1).
Eigen::Matrix2d default_initial_cov();

/// One motion step of the truth; stochastic mode samples N(Fx, Qproc).
Eigen::Vector2d propagate_truth(const Eigen::Vector2d& x, const MotionModel& m, Rng& rng,
                                bool stochastic);

/// Detections with probability p_d, measurement noise sigma_m2, Poisson(lambda)
/// clutter uniform on the field of view; measurement order shuffled.
Scan simulate_scan(const std::vector<Eigen::Vector2d>& truth, int k, const ScenarioParams& p,
                   Rng& rng);

struct ScenarioFrame {
  std::vector<Eigen::Vector2d> truth;
  Scan scan;
};

/// Scans 1..n_scans from the scenario seed alone; per-scan streams are derived
/// so frame k is reproducible independent of evaluation order.
std::vector<ScenarioFrame> simulate_scenario(const ScenarioParams& p, int n_scans);

}  // namespace annealtrack

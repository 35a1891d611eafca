#include "annealtrack/tracking.hpp"

#include <algorithm>

namespace annealtrack {

void ScenarioParams::validate() const {
  if (n_targets < 1) throw ArgumentError("scenario needs n_targets >= 1");
  if (dt <= 0.0) throw ArgumentError("scan interval dt must be positive");
  if (sigma_p2 < 0.0) throw ArgumentError("process noise intensity must be nonnegative");
  if (sigma_m2 <= 0.0) throw ArgumentError("measurement variance must be positive");
  if (!(p_d > 0.0 && p_d < 1.0)) throw ArgumentError("detection probability must lie in (0, 1)");
  if (lambda < 0.0) throw ArgumentError("clutter mean must be nonnegative");
  if (fov_length() <= 0.0) throw ArgumentError("field of view must have positive length");
}

MotionModel motion_matrices(const ScenarioParams& p) {
  if (p.dt <= 0.0) throw ArgumentError("scan interval dt must be positive");
  const double dt = p.dt;
  MotionModel m;
  m.F << 1.0, dt, 0.0, 1.0;
  m.Qproc << dt * dt * dt / 3.0, dt * dt / 2.0, dt * dt / 2.0, dt;
  m.Qproc *= p.sigma_p2;
  return m;
}

TargetState predict(const TargetState& s, const MotionModel& m) {
  TargetState out;
  out.mean = m.F * s.mean;
  out.cov = m.F * s.cov * m.F.transpose() + m.Qproc;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

std::vector<Eigen::Vector2d> init_targets(const ScenarioParams& p) {
  if (p.n_targets < 1) throw ArgumentError("scenario needs n_targets >= 1");
  std::vector<Eigen::Vector2d> xs(p.n_targets);
  for (int i = 1; i <= p.n_targets; ++i)
    xs[i - 1] = Eigen::Vector2d(static_cast<double>(i - 1), 2.0 * (i - 1));
  return xs;
}

Eigen::Matrix2d default_initial_cov() {
  return 0.1 * Eigen::Matrix2d::Identity();
}

Eigen::Vector2d propagate_truth(const Eigen::Vector2d& x, const MotionModel& m, Rng& rng,
                                bool stochastic) {
  Eigen::Vector2d mean = m.F * x;
  if (!stochastic) return mean;
  // Sample N(Fx, Qproc) through the lower-triangular factor; Qproc with
  // sigma_p2 = 0 degenerates to the deterministic step.
  Eigen::LLT<Eigen::Matrix2d> llt(m.Qproc);
  Eigen::Matrix2d L;
  if (llt.info() == Eigen::Success) {
    L = llt.matrixL();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.Qproc);
    L = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
  const Eigen::Vector2d z(rng.normal(), rng.normal());
  return mean + L * z;
}

Scan simulate_scan(const std::vector<Eigen::Vector2d>& truth, int k, const ScenarioParams& p,
                   Rng& rng) {
  p.validate();
  Scan scan;
  scan.k = k;
  for (const auto& x : truth) {
    if (rng.uniform01() < p.p_d)
      scan.measurements.push_back(rng.normal(x(0), std::sqrt(p.sigma_m2)));
  }
  const int n_clutter = rng.poisson(p.lambda);
  for (int c = 0; c < n_clutter; ++c)
    scan.measurements.push_back(rng.uniform(p.fov[0], p.fov[1]));
  // Fisher-Yates shuffle: measurements arrive as an unlabeled superposition.
  for (std::size_t i = scan.measurements.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_int(i);
    std::swap(scan.measurements[i - 1], scan.measurements[j]);
  }
  return scan;
}

std::vector<ScenarioFrame> simulate_scenario(const ScenarioParams& p, int n_scans) {
  p.validate();
  const MotionModel m = motion_matrices(p);
  std::vector<Eigen::Vector2d> truth = init_targets(p);
  std::vector<ScenarioFrame> frames;
  frames.reserve(n_scans);
  for (int k = 1; k <= n_scans; ++k) {
    Rng motion_rng(derive_seed(p.seed, 2 * static_cast<std::uint64_t>(k)));
    Rng scan_rng(derive_seed(p.seed, 2 * static_cast<std::uint64_t>(k) + 1));
    for (auto& x : truth) x = propagate_truth(x, m, motion_rng, !p.deterministic_truth);
    ScenarioFrame frame;
    frame.truth = truth;
    frame.scan = simulate_scan(truth, k, p, scan_rng);
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace annealtrack

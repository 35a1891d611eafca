#include "annealtrack/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace annealtrack {

namespace {

// Spin pattern of basis state b: bit 1 -> spin +1, site 0 most significant.
SpinVector spins_of_basis(std::uint64_t b, int n) {
  SpinVector s(n);
  for (int site = 0; site < n; ++site)
    s[site] = ((b >> (n - 1 - site)) & 1u) ? 1 : -1;
  return s;
}

}  // namespace

Eigen::VectorXcd HamiltonianPair::apply_hb(const Eigen::VectorXcd& x) const {
  const Eigen::Index d = dim();
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(d);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Index mask = Eigen::Index(1) << (n_qubits - 1 - q);
    for (Eigen::Index b = 0; b < d; ++b) y(b) -= x(b ^ mask);
  }
  return y;
}

Eigen::VectorXd HamiltonianPair::apply_hb(const Eigen::VectorXd& x) const {
  const Eigen::Index d = dim();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(d);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Index mask = Eigen::Index(1) << (n_qubits - 1 - q);
    for (Eigen::Index b = 0; b < d; ++b) y(b) -= x(b ^ mask);
  }
  return y;
}

Eigen::VectorXcd HamiltonianPair::apply(double s, const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y = (1.0 - s) * apply_hb(x);
  y.array() += s * hp.array() * x.array();
  return y;
}

Eigen::MatrixXd HamiltonianPair::dense(double s) const {
  const Eigen::Index d = dim();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Index mask = Eigen::Index(1) << (n_qubits - 1 - q);
    for (Eigen::Index b = 0; b < d; ++b) H(b, b ^ mask) -= (1.0 - s);
  }
  H.diagonal() += s * hp;
  return H;
}

Eigen::VectorXcd HamiltonianPair::initial_state() const {
  const Eigen::Index d = dim();
  return Eigen::VectorXcd::Constant(d, std::complex<double>(1.0 / std::sqrt(double(d)), 0.0));
}

HamiltonianPair build_pair(const IsingModel& model) {
  model.validate();
  const int n = model.n();
  if (n > kMaxQubits)
    throw SizeLimitError("build_pair: state vector limited to 12 qubits (dimension 4096)");
  HamiltonianPair pair;
  pair.n_qubits = n;
  pair.hp.resize(Eigen::Index(1) << n);
  for (Eigen::Index b = 0; b < pair.hp.size(); ++b)
    pair.hp(b) = ising_energy(model, spins_of_basis(static_cast<std::uint64_t>(b), n));
  return pair;
}

SpectrumTrace spectrum(const HamiltonianPair& pair, const std::vector<double>& s_grid,
                       int levels) {
  const int L = std::min<int>(levels, static_cast<int>(pair.dim()));
  SpectrumTrace trace;
  trace.s_grid = s_grid;
  trace.energies.resize(static_cast<Eigen::Index>(s_grid.size()), L);
  for (std::size_t g = 0; g < s_grid.size(); ++g) {
    const double s = s_grid[g];
    if (s < 0.0 || s > 1.0) throw ArgumentError("spectrum: s values must lie in [0, 1]");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pair.dense(s), Eigen::EigenvaluesOnly);
    trace.energies.row(static_cast<Eigen::Index>(g)) = es.eigenvalues().head(L).transpose();
  }
  return trace;
}

int suggest_steps(const HamiltonianPair& pair, double t_f) {
  // RK4 per-step norm loss ~ (|H| dt)^6 / 144; |H(s)| <= max(n, max|hp|).
  const double scale = std::max(static_cast<double>(pair.n_qubits), pair.hp.cwiseAbs().maxCoeff());
  const int steps = static_cast<int>(std::ceil(t_f * scale / 0.02));
  return std::max(steps, 1000);
}

Trajectory evolve(const HamiltonianPair& pair, double t_f, int steps, int tracked_levels,
                  int records) {
  if (t_f <= 0.0) throw ArgumentError("evolve: t_f must be positive");
  if (steps < 1) throw ArgumentError("evolve: steps must be >= 1");
  const int L = std::min<int>(tracked_levels, static_cast<int>(pair.dim()));
  records = std::max(2, std::min(records, steps + 1));

  const double dt = t_f / steps;
  const std::complex<double> mi(0.0, -1.0);
  Eigen::VectorXcd psi = pair.initial_state();

  Trajectory traj;
  traj.energies.resize(records, L);
  traj.occupations.resize(records, L);
  traj.s_grid.resize(records);

  int next_record = 0;
  auto record = [&](int step) {
    const double s = static_cast<double>(step) / steps;
    traj.s_grid[next_record] = s;
    if (L > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pair.dense(s));
      for (int l = 0; l < L; ++l) {
        traj.energies(next_record, l) = es.eigenvalues()(l);
        const std::complex<double> amp =
            es.eigenvectors().col(l).cast<std::complex<double>>().dot(psi);
        traj.occupations(next_record, l) = std::norm(amp);
      }
    }
    ++next_record;
  };

  auto rhs = [&](double s, const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    return mi * pair.apply(s, x);
  };

  record(0);
  for (int step = 0; step < steps; ++step) {
    const double t = step * dt;
    const double s0 = t / t_f;
    const double s1 = (t + 0.5 * dt) / t_f;
    const double s2 = (t + dt) / t_f;
    const Eigen::VectorXcd k1 = rhs(s0, psi);
    const Eigen::VectorXcd k2 = rhs(s1, psi + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = rhs(s1, psi + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = rhs(s2, psi + dt * k3);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    // spread the remaining records evenly over the remaining steps
    const long long due = static_cast<long long>(next_record) * steps;
    if (static_cast<long long>(step + 1) * (records - 1) >= due && next_record < records)
      record(step + 1);
  }

  traj.final_state = psi;
  traj.final_norm = psi.norm();
  if (std::abs(traj.final_norm - 1.0) > kNormTolerance)
    throw AccuracyError("evolve: norm drifted by " +
                        std::to_string(std::abs(traj.final_norm - 1.0)) +
                        "; increase the step count (see suggest_steps)");
  return traj;
}

double ground_occupation(const HamiltonianPair& pair, const Eigen::VectorXcd& state) {
  const double e0 = pair.hp.minCoeff();
  double p = 0.0;
  for (Eigen::Index b = 0; b < pair.dim(); ++b)
    if (pair.hp(b) <= e0 + kArgminTolerance) p += std::norm(state(b));
  return p;
}

double adiabatic_metric(const HamiltonianPair& pair, double t_f,
                        const std::vector<double>& s_grid) {
  if (t_f <= 0.0) throw ArgumentError("adiabatic_metric: t_f must be positive");
  double worst = 0.0;
  for (double s : s_grid) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pair.dense(s));
    const Eigen::VectorXd& evals = es.eigenvalues();
    const Eigen::VectorXd ground = es.eigenvectors().col(0);
    // dH/ds = H_P - H_B applied to the ground vector
    Eigen::VectorXd dh_ground = pair.hp.asDiagonal() * ground - pair.apply_hb(ground);
    for (Eigen::Index m = 1; m < pair.dim(); ++m) {
      const double gap = std::abs(evals(m) - evals(0));
      if (gap < 1e-9)
        throw DegeneracyError("adiabatic_metric: ground state degenerate at s = " +
                                  std::to_string(s),
                              s);
      const double elem = std::abs(es.eigenvectors().col(m).dot(dh_ground));
      worst = std::max(worst, elem / gap);
    }
  }
  return worst / t_f;
}

std::vector<BitVector> measure(const Eigen::VectorXcd& state, Rng& rng, int n_s) {
  const Eigen::Index d = state.size();
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  if ((Eigen::Index(1) << n) != d) throw ArgumentError("measure: state length must be a power of 2");

  // cumulative Born weights; normalized so the last entry is exactly 1
  std::vector<double> cdf(d);
  double acc = 0.0;
  for (Eigen::Index b = 0; b < d; ++b) {
    acc += std::norm(state(b));
    cdf[b] = acc;
  }
  if (acc <= 0.0) throw ArgumentError("measure: state has zero norm");
  for (auto& v : cdf) v /= acc;

  std::vector<BitVector> out;
  out.reserve(n_s);
  for (int i = 0; i < n_s; ++i) {
    const double u = rng.uniform01();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto b = static_cast<std::uint64_t>(it == cdf.end() ? d - 1 : it - cdf.begin());
    out.push_back(bits_of_index(b, n));
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) return {lo};
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

}  // namespace annealtrack

#include "annealtrack/builders.hpp"

#include <cmath>

namespace annealtrack {

Eigen::VectorXd ones_vec(int k) { return Eigen::VectorXd::Ones(k); }

Eigen::VectorXd ones_vec_zero_first(int k) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(k);
  v(0) = 0.0;
  return v;
}

Eigen::MatrixXd hollow_ones(int k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(k, k);
  m.diagonal().setZero();
  return m;
}

Eigen::MatrixXd identity_zero_first(int k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k, k);
  m(0, 0) = 0.0;
  return m;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXd kron_vec(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

IsingModel hp_to_ising(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q) {
  IsingModel m;
  m.J = -Q;
  m.h = -q;
  m.mu = 1.0;
  m.offset = 0.0;
  m.validate();
  return m;
}

IsingModel krooks_ising(int k) {
  if (k < 2) throw ArgumentError("k-rooks needs k >= 2");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(k, k);
  const Eigen::MatrixXd J = hollow_ones(k);
  const Eigen::MatrixXd Q = kron(I, J) + kron(J, I);
  const Eigen::VectorXd q =
      Eigen::VectorXd::Constant(k * k, 2.0 * (2.0 * k - 4.0));  // theta_r + theta_c
  return hp_to_ising(Q, q);
}

IsingModel biased_krooks_ising(int k, double gamma0, int m) {
  if (m < 1 || m > k) throw ArgumentError("bias count m must satisfy 1 <= m <= k");
  IsingModel model = krooks_ising(k);
  const SiteLabels labels = krooks_labels(k);
  for (int i = 0; i < m; ++i) {
    // diagonal cell (i, i), flat site i(k+1); q_site += -|gamma0| and h = -q
    const int site = labels.site(i, i);
    model.h(site) += std::abs(gamma0);
  }
  return model;
}

SiteLabels krooks_labels(int k) { return SiteLabels{k, k}; }

SiteLabels mtda_labels(int n_targets, int n_meas) {
  return SiteLabels{n_targets + 1, n_meas + 1};
}

IsingModel mtda_ising(const CostMatrix& cm, double c, double ctilde) {
  if (c <= 0.0) throw ArgumentError("constraint scale c must be positive");
  if (ctilde < 0.0) throw ArgumentError("constraint scale ctilde must be nonnegative");
  const int n = cm.n_targets();
  const int m = cm.n_meas();

  const Eigen::MatrixXd w_rows = kron(identity_zero_first(m + 1), hollow_ones(n + 1));
  const Eigen::MatrixXd w_cols = kron(hollow_ones(m + 1), identity_zero_first(n + 1));
  const Eigen::MatrixXd Q = c * (w_rows + w_cols);

  const Eigen::VectorXd theta_rows =
      (2.0 * n - 2.0) * kron_vec(ones_vec_zero_first(m + 1), ones_vec(n + 1));
  const Eigen::VectorXd theta_cols =
      (2.0 * m - 2.0) * kron_vec(ones_vec(m + 1), ones_vec_zero_first(n + 1));

  // gamma = vec(Gamma), column-major
  Eigen::VectorXd gamma(cm.gamma.size());
  const SiteLabels labels = mtda_labels(n, m);
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= n; ++i) gamma(labels.site(i, j)) = cm.gamma(i, j);

  const Eigen::VectorXd q = ctilde * (theta_rows + theta_cols) + gamma;
  return hp_to_ising(Q, q);
}

AssociationMatrix decode_state(const BitVector& x, int n_targets, int n_meas) {
  const SiteLabels labels = mtda_labels(n_targets, n_meas);
  if (static_cast<int>(x.size()) != labels.n_sites())
    throw ArgumentError("decode_state: state length must be (N+1)(M+1)");
  AssociationMatrix S;
  S.S.resize(n_targets + 1, n_meas + 1);
  for (int s = 0; s < labels.n_sites(); ++s) {
    const auto [i, j] = labels.cell(s);
    S.S(i, j) = x[s];
  }
  S.S(0, 0) = 0;
  return S;
}

BitVector encode_assoc(const AssociationMatrix& S) {
  const SiteLabels labels = mtda_labels(S.n_targets(), S.n_meas());
  BitVector x(labels.n_sites());
  for (int s = 0; s < labels.n_sites(); ++s) {
    const auto [i, j] = labels.cell(s);
    x[s] = static_cast<std::uint8_t>(S.S(i, j) != 0);
  }
  x[labels.site(0, 0)] = 0;
  return x;
}

}  // namespace annealtrack

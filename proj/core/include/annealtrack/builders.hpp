#pragma once

#include <utility>

#include "annealtrack/assoc_cost.hpp"
#include "annealtrack/qubo.hpp"

namespace annealtrack {

/// Building blocks for the constraint Hamiltonians.
Eigen::VectorXd ones_vec(int k);
Eigen::VectorXd ones_vec_zero_first(int k);   // (0, 1, ..., 1)^T
Eigen::MatrixXd hollow_ones(int k);           // all-ones with zero diagonal
Eigen::MatrixXd identity_zero_first(int k);   // identity with zero (0,0) entry
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
Eigen::VectorXd kron_vec(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Flat-site <-> matrix-cell mapping under column-major vectorization:
/// site = j * rows + i for cell (i, j).
struct SiteLabels {
  int rows = 0;
  int cols = 0;

  int n_sites() const { return rows * cols; }
  int site(int i, int j) const { return j * rows + i; }
  std::pair<int, int> cell(int s) const { return {s % rows, s / rows}; }
};

/// Problem Hamiltonians are specified as H_P = sigma^T Q sigma + q^T sigma;
/// stored as an IsingModel (J = -Q, h = -q, mu = 1) so ising_energy evaluates
/// H_P directly.
IsingModel hp_to_ising(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q);

/// Place k non-attacking rooks on a k x k board:
///   Q_kR = I(k) (x) J(k) + J(k) (x) I(k),  q_kR = 2(2k-4) 1(k^2).
/// Ground manifold is the k! permutation placements.
IsingModel krooks_ising(int k);

/// Adds an on-site bias -|gamma0| at the diagonal cells (1,1)..(m,m)
/// (1-based), shrinking the ground degeneracy to (k-m)!.
IsingModel biased_krooks_ising(int k, double gamma0, int m);

/// Association problem over (N+1)(M+1) sites:
///   Q = c (I_0(M+1) (x) J(N+1) + J(M+1) (x) I_0(N+1))
///   q = ctilde ((2N-2)[1_0 (x) 1] + (2M-2)[1 (x) 1_0]) + vec(Gamma).
IsingModel mtda_ising(const CostMatrix& cm, double c = 10.0, double ctilde = 1.0);

SiteLabels mtda_labels(int n_targets, int n_meas);
SiteLabels krooks_labels(int k);

/// Inverse of the column-major vectorization; entry (0,0) forced to zero.
AssociationMatrix decode_state(const BitVector& x, int n_targets, int n_meas);

/// vec(S) with entry (0,0) cleared.
BitVector encode_assoc(const AssociationMatrix& S);

}  // namespace annealtrack

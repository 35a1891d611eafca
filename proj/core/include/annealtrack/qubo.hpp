#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "annealtrack/errors.hpp"

namespace annealtrack {

/// Binary assignment vector, one entry in {0,1} per site.
using BitVector = std::vector<std::uint8_t>;
/// Spin configuration, one entry in {-1,+1} per site.
using SpinVector = std::vector<std::int8_t>;

/// sigma = 2x - e
SpinVector to_spins(const BitVector& x);
/// x = (sigma + e) / 2
BitVector to_bits(const SpinVector& s);

/// Site 0 maps to the most significant bit, matching the Kronecker ordering
/// of the basis states in the adiabatic simulator.
std::uint64_t state_index(const BitVector& x);
BitVector bits_of_index(std::uint64_t idx, int n);
std::string bits_to_string(const BitVector& x);
BitVector bits_from_string(const std::string& s);

/// Minimize x^T Q x + offset over x in {0,1}^n. Q symmetric; the offset keeps
/// transformation round trips exact.
struct Qubo {
  Eigen::MatrixXd Q;
  double offset = 0.0;

  int n() const { return static_cast<int>(Q.rows()); }
  void validate() const;
};

/// H(sigma) = -sigma^T J sigma - mu h^T sigma + offset.
struct IsingModel {
  Eigen::MatrixXd J;
  Eigen::VectorXd h;
  double mu = 1.0;
  double offset = 0.0;

  int n() const { return static_cast<int>(J.rows()); }
  void validate() const;
};

/// min c^T x subject to A x = b, x binary. A, b integer.
struct BinaryIlp {
  Eigen::MatrixXi A;
  Eigen::VectorXi b;
  Eigen::VectorXd c;

  int n_vars() const { return static_cast<int>(A.cols()); }
  int n_constraints() const { return static_cast<int>(A.rows()); }
  void validate() const;
};

double qubo_energy(const Qubo& q, const BitVector& x);
double ising_energy(const IsingModel& m, const SpinVector& sigma);

/// Rewrites H(2x - e); the constant mu h^T e - e^T J e dropped by the algebra
/// is restored into the offset so energies match state-by-state.
Qubo ising_to_qubo(const IsingModel& m);

/// Inverse map x = (sigma + e) / 2, offsets tracked for an exact round trip.
IsingModel qubo_to_ising(const Qubo& q);

/// Penalty reformulation Diag(c) + sum_j w_j (A_j^T A_j - 2 Diag(b_j A_j)),
/// offset sum_j w_j b_j^2, so the QUBO energy is c^T x + weighted squared
/// constraint violation, exactly.
Qubo ilp_to_qubo(const BinaryIlp& p, const Eigen::VectorXd& w);

struct BruteForceResult {
  double e0 = 0.0;
  /// Complete set of minimizers within 1e-9 of e0, ascending state index.
  std::vector<BitVector> argmins;
};

inline constexpr int kBruteForceMaxVars = 24;
inline constexpr double kArgminTolerance = 1e-9;

/// Exhaustive minimum over all 2^n states; n <= 24.
BruteForceResult brute_force_solve(const Qubo& q);
/// Same search run through the exact QUBO correspondence.
BruteForceResult brute_force_solve(const IsingModel& m);

}  // namespace annealtrack

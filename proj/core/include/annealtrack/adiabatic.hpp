#pragma once

#include <Eigen/Dense>
#include <vector>

#include "annealtrack/qubo.hpp"
#include "annealtrack/rng.hpp"

namespace annealtrack {

inline constexpr int kMaxQubits = 12;
inline constexpr double kNormTolerance = 1e-6;

/// Interpolation endpoints H(s) = (1-s) H_B + s H_P for an Ising problem.
/// H_B = -sum_i sigma1^i acts by basis bit flips; H_P is diagonal in the
/// computational basis, entry b = ising_energy of the spin pattern of b.
struct HamiltonianPair {
  int n_qubits = 0;
  Eigen::VectorXd hp;  // length 2^n

  Eigen::Index dim() const { return hp.size(); }

  /// y = H_B x (bit-flip sum, O(n 2^n)).
  Eigen::VectorXcd apply_hb(const Eigen::VectorXcd& x) const;
  Eigen::VectorXd apply_hb(const Eigen::VectorXd& x) const;

  /// y = H(s) x.
  Eigen::VectorXcd apply(double s, const Eigen::VectorXcd& x) const;

  /// Dense symmetric H(s).
  Eigen::MatrixXd dense(double s) const;

  /// Ground state of H_B: the uniform superposition, energy -n.
  Eigen::VectorXcd initial_state() const;
};

/// n <= 12 (state dimension 4096).
HamiltonianPair build_pair(const IsingModel& model);

/// Lowest `levels` eigenvalues of H(s) per grid point, ascending.
struct SpectrumTrace {
  std::vector<double> s_grid;
  Eigen::MatrixXd energies;  // one row per grid point, `levels` columns
};

SpectrumTrace spectrum(const HamiltonianPair& pair, const std::vector<double>& s_grid, int levels);

/// Closed-system evolution record: instantaneous eigenvalues and occupation
/// probabilities of the lowest tracked eigenstates along s = t / t_f.
struct Trajectory {
  std::vector<double> s_grid;
  Eigen::MatrixXd energies;     // records x tracked levels
  Eigen::MatrixXd occupations;  // records x tracked levels
  Eigen::VectorXcd final_state;
  double final_norm = 0.0;
};

/// Fixed-step RK4 integration of i d/dt psi = H(t/t_f) psi from the H_B
/// ground state, hbar = 1. Throws AccuracyError if the norm drifts by more
/// than 1e-6 (increase `steps`).
Trajectory evolve(const HamiltonianPair& pair, double t_f, int steps, int tracked_levels = 4,
                  int records = 101);

/// Step count sized so RK4 norm drift stays well under the 1e-6 tolerance.
int suggest_steps(const HamiltonianPair& pair, double t_f);

/// Population of the (possibly degenerate) H_P ground manifold in `state`.
double ground_occupation(const HamiltonianPair& pair, const Eigen::VectorXcd& state);

/// max over the grid and excited m of |<m| H_P - H_B |0>| / |E_m - E_0|,
/// divided by t_f. Throws DegeneracyError when the ground gap closes.
double adiabatic_metric(const HamiltonianPair& pair, double t_f,
                        const std::vector<double>& s_grid);

/// n_s Born-rule draws from |amplitude|^2.
std::vector<BitVector> measure(const Eigen::VectorXcd& state, Rng& rng, int n_s);

std::vector<double> linspace(double lo, double hi, int count);

}  // namespace annealtrack

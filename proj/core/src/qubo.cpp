#include "annealtrack/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace annealtrack {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) throw ArgumentError(std::string(name) + " must be square");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i))
        throw ArgumentError(std::string(name) + " must be symmetric");
}

}  // namespace

SpinVector to_spins(const BitVector& x) {
  SpinVector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) throw ArgumentError("bit values must be 0 or 1");
    s[i] = static_cast<std::int8_t>(2 * x[i] - 1);
  }
  return s;
}

BitVector to_bits(const SpinVector& s) {
  BitVector x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 1 && s[i] != -1) throw ArgumentError("spin values must be -1 or +1");
    x[i] = static_cast<std::uint8_t>((s[i] + 1) / 2);
  }
  return x;
}

std::uint64_t state_index(const BitVector& x) {
  std::uint64_t idx = 0;
  for (std::uint8_t b : x) idx = (idx << 1) | (b & 1u);
  return idx;
}

BitVector bits_of_index(std::uint64_t idx, int n) {
  BitVector x(n);
  for (int s = 0; s < n; ++s) x[s] = static_cast<std::uint8_t>((idx >> (n - 1 - s)) & 1u);
  return x;
}

std::string bits_to_string(const BitVector& x) {
  std::string s(x.size(), '0');
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) s[i] = '1';
  return s;
}

BitVector bits_from_string(const std::string& s) {
  BitVector x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ArgumentError("state string must be 0/1");
    x[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return x;
}

void Qubo::validate() const {
  if (Q.rows() < 1) throw ArgumentError("Qubo needs n >= 1");
  require_symmetric(Q, "Q");
}

void IsingModel::validate() const {
  if (J.rows() < 1) throw ArgumentError("IsingModel needs n >= 1");
  require_symmetric(J, "J");
  if (h.size() != J.rows()) throw ArgumentError("h length must match J");
}

void BinaryIlp::validate() const {
  if (A.rows() < 1 || A.cols() < 1) throw ArgumentError("BinaryIlp needs m >= 1, n >= 1");
  if (b.size() != A.rows()) throw ArgumentError("b length must match rows of A");
  if (c.size() != A.cols()) throw ArgumentError("c length must match cols of A");
}

double qubo_energy(const Qubo& q, const BitVector& x) {
  if (static_cast<int>(x.size()) != q.n())
    throw ArgumentError("qubo_energy: state length does not match problem size");
  const int n = q.n();
  Eigen::VectorXd xv(n);
  for (int i = 0; i < n; ++i) {
    if (x[i] > 1) throw ArgumentError("bit values must be 0 or 1");
    xv(i) = x[i];
  }
  return xv.dot(q.Q * xv) + q.offset;
}

double ising_energy(const IsingModel& m, const SpinVector& sigma) {
  if (static_cast<int>(sigma.size()) != m.n())
    throw ArgumentError("ising_energy: state length does not match problem size");
  const int n = m.n();
  Eigen::VectorXd sv(n);
  for (int i = 0; i < n; ++i) {
    if (sigma[i] != 1 && sigma[i] != -1) throw ArgumentError("spin values must be -1 or +1");
    sv(i) = sigma[i];
  }
  return -sv.dot(m.J * sv) - m.mu * m.h.dot(sv) + m.offset;
}

Qubo ising_to_qubo(const IsingModel& m) {
  m.validate();
  const int n = m.n();
  const Eigen::VectorXd e = Eigen::VectorXd::Ones(n);
  Qubo q;
  q.Q = -4.0 * m.J;
  const Eigen::VectorXd diag = 4.0 * (m.J * e) - 2.0 * m.mu * m.h;
  q.Q.diagonal() += diag;
  q.offset = m.offset + m.mu * m.h.dot(e) - e.dot(m.J * e);
  return q;
}

IsingModel qubo_to_ising(const Qubo& q) {
  q.validate();
  const int n = q.n();
  const Eigen::VectorXd e = Eigen::VectorXd::Ones(n);
  IsingModel m;
  m.J = -0.25 * q.Q;
  m.h = -0.5 * (q.Q * e);  // mu = 1
  m.mu = 1.0;
  m.offset = q.offset + 0.25 * e.dot(q.Q * e);
  return m;
}

Qubo ilp_to_qubo(const BinaryIlp& p, const Eigen::VectorXd& w) {
  p.validate();
  if (w.size() != p.n_constraints())
    throw ArgumentError("ilp_to_qubo: one weight per constraint required");
  if ((w.array() <= 0.0).any()) throw ArgumentError("ilp_to_qubo: weights must be positive");

  const int n = p.n_vars();
  Qubo q;
  q.Q = Eigen::MatrixXd::Zero(n, n);
  q.Q.diagonal() = p.c;
  q.offset = 0.0;
  for (int j = 0; j < p.n_constraints(); ++j) {
    const Eigen::VectorXd row = p.A.row(j).cast<double>().transpose();
    const double bj = static_cast<double>(p.b(j));
    q.Q += w(j) * (row * row.transpose());
    q.Q.diagonal() -= 2.0 * w(j) * bj * row;
    q.offset += w(j) * bj * bj;
  }
  return q;
}

BruteForceResult brute_force_solve(const Qubo& q) {
  q.validate();
  const int n = q.n();
  if (n > kBruteForceMaxVars)
    throw SizeLimitError("brute_force_solve: n > 24 would enumerate more than 2^24 states");

  const std::uint64_t total = 1ULL << n;

  // Gray-code walk: one bit flip per step, O(n) energy delta. Energies are
  // refreshed from scratch periodically and candidates re-evaluated exactly,
  // so incremental drift cannot leak into the 1e-9 argmin tolerance.
  BitVector x(n, 0);
  Eigen::VectorXd xv = Eigen::VectorXd::Zero(n);
  double energy = q.offset;
  double best = energy;
  std::vector<std::uint64_t> candidates{0};
  const double slack = 2.0 * kArgminTolerance;

  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::uint64_t next_gray = step ^ (step >> 1);
    const int flip_bit = static_cast<int>(std::countr_zero(gray ^ next_gray));
    gray = next_gray;
    // gray bit p corresponds to site n-1-p under the MSB-first convention
    const int site = n - 1 - flip_bit;

    const double sign = x[site] ? -1.0 : 1.0;
    energy += sign * (q.Q(site, site) + 2.0 * (q.Q.row(site).dot(xv) - q.Q(site, site) * xv(site)));
    x[site] ^= 1u;
    xv(site) = x[site];

    if ((step & 0xFFFFu) == 0) energy = qubo_energy(q, x);  // periodic exact refresh
    if (energy <= best + slack) {
      if (energy < best) best = energy;
      candidates.push_back(state_index(x));
    }
  }

  // Exact re-evaluation of every candidate.
  double e0 = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint64_t, double>> exact;
  exact.reserve(candidates.size());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (std::uint64_t idx : candidates) {
    const double e = qubo_energy(q, bits_of_index(idx, n));
    exact.emplace_back(idx, e);
    e0 = std::min(e0, e);
  }

  BruteForceResult out;
  out.e0 = e0;
  for (const auto& [idx, e] : exact)
    if (std::abs(e - e0) <= kArgminTolerance) out.argmins.push_back(bits_of_index(idx, n));
  return out;
}

BruteForceResult brute_force_solve(const IsingModel& m) {
  return brute_force_solve(ising_to_qubo(m));
}

}  // namespace annealtrack

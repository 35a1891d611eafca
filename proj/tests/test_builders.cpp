#include <doctest.h>

#include <set>

#include "annealtrack/builders.hpp"
#include "oracles.hpp"

using namespace annealtrack;

namespace {

// All distinct H_P levels by direct evaluation of every spin state.
std::vector<double> distinct_levels(const IsingModel& m) {
  const int n = m.n();
  std::vector<double> levels;
  for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
    const double e = oracles::naive_ising_energy(m.J, m.h, m.mu, m.offset, to_spins(bits_of_index(b, n)));
    bool merged = false;
    for (double& l : levels)
      if (std::abs(l - e) <= 1e-9) merged = true;
    if (!merged) levels.push_back(e);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

bool is_permutation_board(const BitVector& x, int k) {
  const SiteLabels labels = krooks_labels(k);
  for (int i = 0; i < k; ++i) {
    int row_sum = 0, col_sum = 0;
    for (int j = 0; j < k; ++j) {
      row_sum += x[labels.site(i, j)];
      col_sum += x[labels.site(j, i)];
    }
    if (row_sum != 1 || col_sum != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("kronecker helpers") {
  CHECK(hollow_ones(3).diagonal().isZero(0.0));
  CHECK(hollow_ones(3).sum() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(identity_zero_first(4).trace() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ones_vec_zero_first(3)(0) == 0.0);
  CHECK(ones_vec_zero_first(3).sum() == doctest::Approx(2.0).epsilon(1e-15));

  const Eigen::MatrixXd a = (Eigen::MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd k = kron(a, b);
  CHECK(k(0, 0) == 1.0);
  CHECK(k(0, 2) == 2.0);
  CHECK(k(1, 3) == 2.0);
  CHECK(k(2, 0) == 3.0);
}

TEST_CASE("k-rooks ground structure") {
  CHECK_THROWS_AS(krooks_ising(1), ArgumentError);

  SUBCASE("k = 2 has zero fields and the two permutation ground states") {
    const IsingModel m = krooks_ising(2);
    CHECK(m.h.isZero(0.0));  // 2k - 4 = 0
    const BruteForceResult r = brute_force_solve(m);
    REQUIRE(r.argmins.size() == 2);
    for (const auto& g : r.argmins) CHECK(is_permutation_board(g, 2));
  }

  SUBCASE("k = 2, 3: degeneracy k! and the level ladder") {
    for (int k : {2, 3}) {
      const IsingModel m = krooks_ising(k);
      const BruteForceResult r = brute_force_solve(m);
      CHECK(static_cast<double>(r.argmins.size()) == oracles::factorial(k));
      for (const auto& g : r.argmins) CHECK(is_permutation_board(g, k));
    }

    // k = 2: the complete spectrum is a uniform ladder with gap 8
    const std::vector<double> l2 = distinct_levels(krooks_ising(2));
    REQUIRE(l2.size() == 3);
    for (std::size_t i = 1; i < l2.size(); ++i)
      CHECK(l2[i] - l2[i - 1] == doctest::Approx(8.0).epsilon(1e-12));

    // k = 3: gap 8 throughout the low manifolds; the two extreme
    // near-full-board levels sit at 48 and 72 (occupancy parity leaves
    // -24 + 4V reachable only for V in {0,2,...,14,18,24})
    const std::vector<double> l3 = distinct_levels(krooks_ising(3));
    const std::vector<double> expect{-24, -16, -8, 0, 8, 16, 24, 32, 48, 72};
    REQUIRE(l3.size() == expect.size());
    for (std::size_t i = 0; i < l3.size(); ++i)
      CHECK(l3[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }

  SUBCASE("k = 4: degeneracy 4! by enumeration") {
    const BruteForceResult r = brute_force_solve(krooks_ising(4));
    CHECK(r.argmins.size() == 24);
    for (const auto& g : r.argmins) CHECK(is_permutation_board(g, 4));
  }
}

TEST_CASE("biased k-rooks") {
  CHECK_THROWS_AS(biased_krooks_ising(3, 6.0, 0), ArgumentError);
  CHECK_THROWS_AS(biased_krooks_ising(3, 6.0, 4), ArgumentError);

  SUBCASE("gamma0 = 0 leaves the problem unchanged") {
    const IsingModel plain = krooks_ising(3);
    const IsingModel biased = biased_krooks_ising(3, 0.0, 2);
    CHECK((plain.J - biased.J).norm() == 0.0);
    CHECK((plain.h - biased.h).norm() == 0.0);
  }

  SUBCASE("m = k forces the identity placement") {
    const BruteForceResult r = brute_force_solve(biased_krooks_ising(3, 6.0, 3));
    REQUIRE(r.argmins.size() == 1);
    const SiteLabels labels = krooks_labels(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(r.argmins[0][labels.site(i, j)] == (i == j ? 1 : 0));
  }

  SUBCASE("k = 4, m = 2 shrinks the ground set to (k-m)! = 2") {
    const BruteForceResult r = brute_force_solve(biased_krooks_ising(4, 6.0, 2));
    REQUIRE(r.argmins.size() == 2);
    const SiteLabels labels = krooks_labels(4);
    for (const auto& g : r.argmins) {
      CHECK(is_permutation_board(g, 4));
      CHECK(g[labels.site(0, 0)] == 1);
      CHECK(g[labels.site(1, 1)] == 1);
    }
  }

  SUBCASE("negative gamma0 is used by magnitude") {
    const IsingModel a = biased_krooks_ising(3, 6.0, 1);
    const IsingModel b = biased_krooks_ising(3, -6.0, 1);
    CHECK((a.h - b.h).norm() == 0.0);
  }
}

TEST_CASE("mtda model structure") {
  SUBCASE("linear constraint term equals vec(B)") {
    for (int n = 1; n <= 5; ++n) {
      for (int m = 0; m <= 5; ++m) {
        const Eigen::VectorXd theta =
            (2.0 * n - 2.0) * kron_vec(ones_vec_zero_first(m + 1), ones_vec(n + 1)) +
            (2.0 * m - 2.0) * kron_vec(ones_vec(m + 1), ones_vec_zero_first(n + 1));
        const SiteLabels labels = mtda_labels(n, m);
        for (int s = 0; s < labels.n_sites(); ++s) {
          const auto [i, j] = labels.cell(s);
          const double b = (2.0 * n - 2.0) * (j > 0 ? 1.0 : 0.0) +
                           (2.0 * m - 2.0) * (i > 0 ? 1.0 : 0.0);
          CHECK(theta(s) == doctest::Approx(b).epsilon(1e-15));
        }
      }
    }
  }

  SUBCASE("square zero-cost case reduces to the printed I0/J forms") {
    const int k = 3;  // N = M = k - 1
    CostMatrix cm;
    cm.gamma = Eigen::MatrixXd::Zero(k, k);
    cm.p_d = 0.95;
    cm.lambda = 1.0;
    cm.fov_len = 100.0;
    const IsingModel m = mtda_ising(cm, 1.0, 1.0);
    const Eigen::MatrixXd expect_q = kron(identity_zero_first(k), hollow_ones(k)) +
                                     kron(hollow_ones(k), identity_zero_first(k));
    CHECK((m.J + expect_q).norm() == doctest::Approx(0.0).epsilon(1e-15));
    const Eigen::VectorXd expect_lin =
        (2.0 * k - 4.0) * (kron_vec(ones_vec_zero_first(k), ones_vec(k)) +
                           kron_vec(ones_vec(k), ones_vec_zero_first(k)));
    CHECK((m.h + expect_lin).norm() == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("1x1 scenario with a matched measurement assigns it") {
    ScenarioParams p;
    TargetState pred;
    pred.mean << 50.0, 0.0;
    pred.cov << 1.0 / 3.0, 0.5, 0.5, 1.0;
    Scan scan;
    scan.k = 1;
    scan.measurements = {50.0};
    const CostMatrix cm = build_cost_matrix({pred}, scan, p);
    const IsingModel m = mtda_ising(cm);  // default c = 10, ctilde = 1
    const BruteForceResult r = brute_force_solve(m);
    REQUIRE(r.argmins.size() == 1);
    const AssociationMatrix S = decode_state(r.argmins[0], 1, 1);
    CHECK(S.S(1, 1) == 1);
    CHECK(S.S(0, 1) == 0);
    CHECK(S.S(1, 0) == 0);
  }

  SUBCASE("constraint-only limit reproduces the feasible set") {
    for (int n = 1; n <= 3; ++n) {
      for (int m = 0; m <= 3; ++m) {
        CostMatrix cm;
        cm.gamma = Eigen::MatrixXd::Zero(n + 1, m + 1);
        cm.p_d = 0.95;
        cm.lambda = 1.0;
        cm.fov_len = 100.0;
        const IsingModel model = mtda_ising(cm, 1000.0, 1000.0);
        const BruteForceResult r = brute_force_solve(model);
        // site (0,0) is decoupled with zero cost here, so every ground state
        // appears twice, differing only in that meaningless bit
        std::set<std::uint64_t> ground;
        for (const auto& g : r.argmins)
          ground.insert(state_index(encode_assoc(decode_state(g, n, m))));
        std::set<std::uint64_t> feasible;
        for (const auto& S : enumerate_feasible(n, m))
          feasible.insert(state_index(encode_assoc(S)));
        CHECK(ground == feasible);
        CHECK(r.argmins.size() == 2 * feasible.size());
      }
    }
  }
}

TEST_CASE("state decoding round trips") {
  const BitVector zero(12, 0);
  const AssociationMatrix empty = decode_state(zero, 2, 3);
  CHECK(empty.S.isZero());

  CHECK_THROWS_AS(decode_state(BitVector(5, 0), 2, 3), ArgumentError);

  // the worked feasible example round-trips through vec/decode
  AssociationMatrix S;
  S.S.resize(4, 5);
  S.S << 0, 0, 1, 0, 1,
         0, 1, 0, 0, 0,
         1, 0, 0, 0, 0,
         0, 0, 0, 1, 0;
  const BitVector x = encode_assoc(S);
  CHECK(decode_state(x, 3, 4) == S);

  // encode . decode clears bit (0,0)
  BitVector with_corner(4, 0);
  with_corner[0] = 1;  // site (0,0)
  const BitVector cleared = encode_assoc(decode_state(with_corner, 1, 1));
  CHECK(cleared == BitVector(4, 0));
}

TEST_CASE("builders are deterministic") {
  const IsingModel a = krooks_ising(3);
  const IsingModel b = krooks_ising(3);
  CHECK(a.J == b.J);
  CHECK(a.h == b.h);

  ScenarioParams p;
  TargetState pred{Eigen::Vector2d(1.0, 0.0), default_initial_cov()};
  Scan scan;
  scan.measurements = {1.5, 2.5};
  const CostMatrix cm = build_cost_matrix({pred, pred}, scan, p);
  const IsingModel c = mtda_ising(cm);
  const IsingModel d = mtda_ising(cm);
  CHECK(c.J == d.J);
  CHECK(c.h == d.h);
}

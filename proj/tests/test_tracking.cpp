#include <doctest.h>

#include "annealtrack/tracking.hpp"
#include "oracles.hpp"

using namespace annealtrack;

TEST_CASE("motion matrices at the standard parameters") {
  ScenarioParams p;
  const MotionModel m = motion_matrices(p);
  CHECK(m.F(0, 0) == 1.0);
  CHECK(m.F(0, 1) == 1.0);
  CHECK(m.F(1, 0) == 0.0);
  CHECK(m.F(1, 1) == 1.0);
  CHECK(m.Qproc(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m.Qproc(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.Qproc(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.Qproc(1, 1) == doctest::Approx(1.0).epsilon(1e-15));

  ScenarioParams quiet;
  quiet.sigma_p2 = 0.0;
  CHECK(motion_matrices(quiet).Qproc.isZero(0.0));

  ScenarioParams bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(motion_matrices(bad), ArgumentError);

  // stationary target is a fixed point of F
  const Eigen::Vector2d still(42.0, 0.0);
  CHECK((m.F * still - still).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("predict propagates mean and covariance") {
  ScenarioParams p;
  const MotionModel m = motion_matrices(p);

  TargetState s;
  s.mean << 0.0, 2.0;
  s.cov.setZero();
  const TargetState out = predict(s, m);
  CHECK(out.mean(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(out.mean(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK((out.cov - m.Qproc).norm() == doctest::Approx(0.0).epsilon(1e-15));

  // covariance prediction does not depend on the target index
  TargetState a{Eigen::Vector2d(0.0, 0.0), default_initial_cov()};
  TargetState b{Eigen::Vector2d(9.0, -3.0), default_initial_cov()};
  for (int k = 0; k < 4; ++k) {
    a = predict(a, m);
    b = predict(b, m);
    CHECK((a.cov - b.cov).norm() == doctest::Approx(0.0).epsilon(1e-14));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a.cov);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("initial kinematics") {
  ScenarioParams p;
  p.n_targets = 3;
  const auto xs = init_targets(p);
  REQUIRE(xs.size() == 3);
  CHECK(xs[0] == Eigen::Vector2d(0.0, 0.0));
  CHECK(xs[1] == Eigen::Vector2d(1.0, 2.0));
  CHECK(xs[2] == Eigen::Vector2d(2.0, 4.0));
}

TEST_CASE("truth propagation") {
  ScenarioParams p;
  const MotionModel m = motion_matrices(p);
  Rng rng(5);
  const Eigen::Vector2d x(0.0, 2.0);
  CHECK(propagate_truth(x, m, rng, false) == Eigen::Vector2d(2.0, 2.0));

  // zero process noise: the stochastic path equals the deterministic one
  ScenarioParams quiet;
  quiet.sigma_p2 = 0.0;
  const MotionModel mq = motion_matrices(quiet);
  CHECK((propagate_truth(x, mq, rng, true) - Eigen::Vector2d(2.0, 2.0)).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));

  // Monte Carlo: sample mean of many draws approaches Fx
  const int n = 10000;
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (int i = 0; i < n; ++i) acc += propagate_truth(x, m, rng, true);
  acc /= n;
  const double pos_sigma = std::sqrt(m.Qproc(0, 0) / n);
  const double vel_sigma = std::sqrt(m.Qproc(1, 1) / n);
  CHECK(std::abs(acc(0) - 2.0) < 5.0 * pos_sigma);
  CHECK(std::abs(acc(1) - 2.0) < 5.0 * vel_sigma);
}

TEST_CASE("scan simulation limits") {
  ScenarioParams p;
  p.n_targets = 2;
  const std::vector<Eigen::Vector2d> truth{{10.0, 0.0}, {20.0, 0.0}};

  SUBCASE("perfect detection, no clutter, tiny noise") {
    ScenarioParams q = p;
    q.p_d = 0.999999999;
    q.lambda = 0.0;
    q.sigma_m2 = 1e-18;
    Rng rng(3);
    const Scan scan = simulate_scan(truth, 1, q, rng);
    REQUIRE(scan.measurements.size() == 2);
    std::vector<double> sorted = scan.measurements;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[0] == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(sorted[1] == doctest::Approx(20.0).epsilon(1e-6));
  }

  SUBCASE("no detection, no clutter gives an empty scan") {
    ScenarioParams q = p;
    q.p_d = 1e-12;
    q.lambda = 0.0;
    Rng rng(3);
    CHECK(simulate_scan(truth, 1, q, rng).measurements.empty());
  }

  SUBCASE("clutter count is Poisson with the configured mean") {
    Rng rng(17);
    ScenarioParams q = p;
    q.p_d = 1e-12;  // isolate the clutter stream
    double total = 0.0;
    const int reps = 10000;
    for (int i = 0; i < reps; ++i) total += simulate_scan(truth, 1, q, rng).measurements.size();
    CHECK(total / reps == doctest::Approx(1.0).epsilon(0.05));
  }

  SUBCASE("clutter stays inside the field of view") {
    Rng rng(9);
    ScenarioParams q = p;
    q.p_d = 1e-12;
    q.lambda = 5.0;
    for (int i = 0; i < 200; ++i) {
      for (double y : simulate_scan(truth, 1, q, rng).measurements) {
        CHECK(y >= q.fov[0]);
        CHECK(y <= q.fov[1]);
      }
    }
  }
}

TEST_CASE("scenario simulation is reproducible from the seed alone") {
  ScenarioParams p;
  p.n_targets = 3;
  p.seed = 99;
  const auto a = simulate_scenario(p, 5);
  const auto b = simulate_scenario(p, 5);
  REQUIRE(a.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(a[k].scan.measurements == b[k].scan.measurements);
    for (int i = 0; i < 3; ++i) CHECK(a[k].truth[i] == b[k].truth[i]);
  }
  // deterministic truth follows F exactly
  CHECK(a[2].truth[1] == Eigen::Vector2d(1.0 + 3.0 * 2.0, 2.0));
}

TEST_CASE("scenario parameter validation") {
  ScenarioParams p;
  p.p_d = 1.0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = ScenarioParams{};
  p.fov = {5.0, 5.0};
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = ScenarioParams{};
  p.lambda = -1.0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
}

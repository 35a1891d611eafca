#include <doctest.h>

#include <filesystem>
#include <json.hpp>

#include "annealtrack/builders.hpp"
#include "annealtrack/io.hpp"
#include "oracles.hpp"

using namespace annealtrack;

TEST_CASE("problem json round trip preserves energies") {
  Rng rng(3);

  SUBCASE("ising") {
    const IsingModel m = oracles::random_ising(5, rng, 0.8);
    const ProblemFile back = problem_from_json(problem_to_json(m));
    REQUIRE(back.kind == "ising");
    for (std::uint64_t b = 0; b < 32; ++b) {
      const SpinVector s = to_spins(bits_of_index(b, 5));
      CHECK(ising_energy(back.ising, s) == doctest::Approx(ising_energy(m, s)).epsilon(1e-12));
    }
  }

  SUBCASE("qubo") {
    const Qubo q = oracles::random_qubo(5, rng);
    const ProblemFile back = problem_from_json(problem_to_json(q));
    REQUIRE(back.kind == "qubo");
    for (std::uint64_t b = 0; b < 32; ++b) {
      const BitVector x = bits_of_index(b, 5);
      CHECK(qubo_energy(back.qubo, x) == doctest::Approx(qubo_energy(q, x)).epsilon(1e-12));
    }
  }

  SUBCASE("labels survive and the schema fields are present") {
    const IsingModel m = krooks_ising(2);
    const std::string text = problem_to_json(m, krooks_labels(2));
    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("n") == 4);
    CHECK(j.at("kind") == "ising");
    CHECK(j.at("labels").at("rows") == 2);
    for (const auto& entry : j.at("quadratic")) CHECK(entry.at(0).get<int>() <= entry.at(1).get<int>());
    const ProblemFile back = problem_from_json(text);
    CHECK(back.has_labels);
    CHECK(back.labels.cell(3) == std::pair<int, int>(1, 1));
  }

  SUBCASE("bad input is rejected") {
    CHECK_THROWS_AS(problem_from_json(R"({"n":0,"kind":"qubo","quadratic":[]})"), ArgumentError);
    CHECK_THROWS_AS(problem_from_json(R"({"n":2,"kind":"spin","quadratic":[]})"), ArgumentError);
    CHECK_THROWS_AS(problem_from_json(R"({"n":2,"kind":"ising","quadratic":[[1,0,2.0]]})"),
                    ArgumentError);
  }
}

TEST_CASE("scenario json round trip") {
  ScenarioParams p;
  p.n_targets = 4;
  p.seed = 77;
  p.deterministic_truth = false;
  p.fov = {10.0, 60.0};
  const ScenarioParams back = scenario_from_json(scenario_to_json(p));
  CHECK(back.n_targets == 4);
  CHECK(back.seed == 77);
  CHECK_FALSE(back.deterministic_truth);
  CHECK(back.fov_length() == doctest::Approx(50.0).epsilon(1e-15));

  // defaults fill the gaps
  const ScenarioParams sparse = scenario_from_json(R"({"n_targets": 2})");
  CHECK(sparse.p_d == doctest::Approx(0.95).epsilon(1e-15));
  CHECK(sparse.lambda == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("run json carries shots and histogram") {
  const IsingModel model = krooks_ising(2);
  AnnealParams p;
  p.backend = Backend::exact;
  p.n_shots = 8;
  p.seed = 2;
  const RunResult r = run(model, p);
  const std::string text = run_to_json(r, p);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("backend") == "exact");
  CHECK(j.at("n_s") == 8);
  CHECK(j.at("shots").size() == 8);
  CHECK(j.at("shots").at(0).at("state").get<std::string>().size() == 4);
  CHECK(j.at("histogram").size() == 1);
  CHECK(run_minimum_from_json(text) == doctest::Approx(r.e_hat0).epsilon(1e-15));
}

TEST_CASE("atomic writes land complete files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "annealtrack_io_test";
  fs::remove_all(dir);
  const fs::path file = dir / "nested" / "out.txt";
  write_file_atomic(file.string(), "payload");
  CHECK(read_file(file.string()) == "payload");
  write_file_atomic(file.string(), "payload2");
  CHECK(read_file(file.string()) == "payload2");
  fs::remove_all(dir);
}

TEST_CASE("gumbel fit json") {
  const std::string text = gumbel_fit_to_json(GumbelParams{-21.5, 4.5}, 500, -1234.5);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("alpha") == doctest::Approx(-21.5).epsilon(1e-15));
  CHECK(j.at("beta") == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(j.at("n_samples") == 500);
}

#include "annealtrack/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace annealtrack {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json quadratic_entries(const Eigen::MatrixXd& m) {
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j)
      if (m(i, j) != 0.0) entries.push_back({i, j, m(i, j)});
  return entries;
}

ordered_json problem_body(const std::string& kind, int n, const Eigen::MatrixXd& quadratic,
                          const Eigen::VectorXd& linear, double offset) {
  ordered_json j;
  j["n"] = n;
  j["kind"] = kind;
  j["quadratic"] = quadratic_entries(quadratic);
  std::vector<double> lin(linear.data(), linear.data() + linear.size());
  for (double& v : lin)
    if (v == 0.0) v = 0.0;  // drop negative zero
  j["linear"] = std::move(lin);
  j["offset"] = offset == 0.0 ? 0.0 : offset;
  return j;
}

}  // namespace

std::string problem_to_json(const Qubo& q) {
  q.validate();
  return problem_body("qubo", q.n(), q.Q, Eigen::VectorXd::Zero(q.n()), q.offset).dump();
}

std::string problem_to_json(const IsingModel& m) {
  m.validate();
  // mu is folded into the field so the stored model always has mu = 1
  return problem_body("ising", m.n(), m.J, m.mu * m.h, m.offset).dump();
}

std::string problem_to_json(const IsingModel& m, const SiteLabels& labels) {
  m.validate();
  ordered_json j = problem_body("ising", m.n(), m.J, m.mu * m.h, m.offset);
  ordered_json cells = ordered_json::array();
  for (int s = 0; s < labels.n_sites(); ++s) {
    const auto [i, jj] = labels.cell(s);
    cells.push_back({i, jj});
  }
  j["labels"] = {{"rows", labels.rows}, {"cols", labels.cols}, {"cells", cells}};
  return j.dump();
}

ProblemFile problem_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ProblemFile out;
  const int n = j.at("n").get<int>();
  if (n < 1) throw ArgumentError("problem file: n must be >= 1");
  out.kind = j.at("kind").get<std::string>();

  Eigen::MatrixXd quad = Eigen::MatrixXd::Zero(n, n);
  for (const auto& entry : j.at("quadratic")) {
    const int a = entry.at(0).get<int>();
    const int b = entry.at(1).get<int>();
    const double v = entry.at(2).get<double>();
    if (a < 0 || b < 0 || a >= n || b >= n || a > b)
      throw ArgumentError("problem file: quadratic entries need 0 <= i <= j < n");
    quad(a, b) = v;
    quad(b, a) = v;
  }
  Eigen::VectorXd linear = Eigen::VectorXd::Zero(n);
  if (j.contains("linear")) {
    const auto& lin = j.at("linear");
    if (static_cast<int>(lin.size()) != n)
      throw ArgumentError("problem file: linear length must equal n");
    for (int i = 0; i < n; ++i) linear(i) = lin.at(i).get<double>();
  }
  const double offset = j.value("offset", 0.0);

  if (out.kind == "qubo") {
    out.qubo.Q = quad;
    out.qubo.Q.diagonal() += linear;  // alpha^T x = x^T Diag(alpha) x
    out.qubo.offset = offset;
    out.qubo.validate();
  } else if (out.kind == "ising") {
    out.ising.J = quad;
    out.ising.h = linear;
    out.ising.mu = 1.0;
    out.ising.offset = offset;
    out.ising.validate();
  } else {
    throw ArgumentError("problem file: kind must be 'qubo' or 'ising'");
  }

  if (j.contains("labels")) {
    out.has_labels = true;
    out.labels.rows = j.at("labels").at("rows").get<int>();
    out.labels.cols = j.at("labels").at("cols").get<int>();
    if (out.labels.n_sites() != n) throw ArgumentError("problem file: labels shape mismatch");
  }
  return out;
}

std::string scenario_to_json(const ScenarioParams& p) {
  ordered_json j;
  j["n_targets"] = p.n_targets;
  j["dt"] = p.dt;
  j["sigma_p2"] = p.sigma_p2;
  j["sigma_m2"] = p.sigma_m2;
  j["p_d"] = p.p_d;
  j["lambda"] = p.lambda;
  j["fov"] = {p.fov[0], p.fov[1]};
  j["seed"] = p.seed;
  j["deterministic_truth"] = p.deterministic_truth;
  return j.dump();
}

ScenarioParams scenario_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ScenarioParams p;
  p.n_targets = j.value("n_targets", p.n_targets);
  p.dt = j.value("dt", p.dt);
  p.sigma_p2 = j.value("sigma_p2", p.sigma_p2);
  p.sigma_m2 = j.value("sigma_m2", p.sigma_m2);
  p.p_d = j.value("p_d", p.p_d);
  p.lambda = j.value("lambda", p.lambda);
  if (j.contains("fov")) {
    p.fov[0] = j.at("fov").at(0).get<double>();
    p.fov[1] = j.at("fov").at(1).get<double>();
  }
  p.seed = j.value("seed", p.seed);
  p.deterministic_truth = j.value("deterministic_truth", p.deterministic_truth);
  p.validate();
  return p;
}

std::string run_to_json(const RunResult& r, const AnnealParams& p) {
  ordered_json j;
  j["backend"] = backend_name(r.backend);
  j["seed"] = r.seed;
  j["n_s"] = static_cast<int>(r.shots.size());
  j["t_f_us"] = p.t_f_us;
  j["e_hat0"] = r.e_hat0;
  ordered_json shots = ordered_json::array();
  for (const Shot& s : r.shots)
    shots.push_back({{"state", bits_to_string(s.state)}, {"energy", s.energy}});
  j["shots"] = std::move(shots);
  ordered_json hist = ordered_json::array();
  for (const auto& [e, f] : density_of_states(r)) hist.push_back({e, f});
  j["histogram"] = std::move(hist);
  return j.dump();
}

double run_minimum_from_json(const std::string& text) {
  return nlohmann::json::parse(text).at("e_hat0").get<double>();
}

std::string gumbel_fit_to_json(const GumbelParams& g, std::size_t n_samples, double loglik) {
  ordered_json j;
  j["alpha"] = g.alpha;
  j["beta"] = g.beta;
  j["n_samples"] = n_samples;
  j["loglik"] = loglik;
  return j.dump();
}

namespace {

ordered_json state_to_json(const TargetState& s) {
  return ordered_json{{"mean", {s.mean(0), s.mean(1)}},
                      {"cov", {{s.cov(0, 0), s.cov(0, 1)}, {s.cov(1, 0), s.cov(1, 1)}}}};
}

ordered_json matrix_rows(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string track_record_to_json(int k, const std::vector<TargetState>& predicted,
                                 const std::vector<TargetState>& updated,
                                 const StepDiagnostics& diag, const Scan& scan) {
  ordered_json j;
  j["k"] = k;
  j["measurements"] = scan.measurements;
  j["e_hat0"] = diag.e_hat0;
  ordered_json preds = ordered_json::array();
  for (const TargetState& s : predicted) preds.push_back(state_to_json(s));
  j["predicted"] = std::move(preds);
  ordered_json ups = ordered_json::array();
  for (const TargetState& s : updated) ups.push_back(state_to_json(s));
  j["updated"] = std::move(ups);
  j["beta"] = matrix_rows(diag.marginals.beta);
  j["hard_assignment"] = matrix_rows(diag.hard_assignment.S.cast<double>());
  j["n_infeasible_shots"] = diag.n_infeasible_shots;
  j["fell_back_to_missed"] = diag.fell_back_to_missed;
  ordered_json dos = ordered_json::array();
  for (const auto& [e, f] : diag.dos) dos.push_back({e, f});
  j["dos"] = std::move(dos);
  return j.dump();
}

std::string histogram_to_csv(const std::vector<std::pair<double, double>>& dos) {
  std::ostringstream os;
  os << "energy,fraction\n";
  char buf[64];
  for (const auto& [e, f] : dos) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e, f);
    os << buf;
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write file: " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace annealtrack

#include "annealtrack/extreme_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace annealtrack {

double gumbel_log_pdf(double x, const GumbelParams& p) {
  if (p.beta <= 0.0) throw ArgumentError("gumbel scale beta must be positive");
  const double z = (x - p.alpha) / p.beta;
  return -std::log(p.beta) + z - std::exp(z);
}

double gumbel_pdf(double x, const GumbelParams& p) { return std::exp(gumbel_log_pdf(x, p)); }

double gumbel_loglik(const std::vector<double>& samples, const GumbelParams& p) {
  double ll = 0.0;
  for (double x : samples) ll += gumbel_log_pdf(x, p);
  return ll;
}

double gumbel_sample(const GumbelParams& p, Rng& rng) {
  if (p.beta <= 0.0) throw ArgumentError("gumbel scale beta must be positive");
  const double u = 1.0 - rng.uniform01();  // (0, 1]
  return p.alpha + p.beta * std::log(-std::log(u));
}

namespace {

// Profile score for the maximum-form fit of the negated samples y = -x:
//   g(beta) = beta - mean(y) + sum(y_i e^{-y_i/beta}) / sum(e^{-y_i/beta}),
// increasing with a single root; exponentials shifted by min(y) for stability.
double profile_score(const std::vector<double>& y, double y_min, double y_mean, double beta) {
  double num = 0.0;
  double den = 0.0;
  for (double v : y) {
    const double w = std::exp(-(v - y_min) / beta);
    num += v * w;
    den += w;
  }
  return beta - y_mean + num / den;
}

}  // namespace

GumbelParams fit_gumbel_mle(const std::vector<double>& samples) {
  if (samples.size() < 10) throw ArgumentError("gumbel fit needs at least 10 samples");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double spread = *mx - *mn;
  if (spread <= 0.0) throw ArgumentError("gumbel fit undefined for constant samples");

  std::vector<double> y(samples.size());
  std::transform(samples.begin(), samples.end(), y.begin(), [](double v) { return -v; });
  const double y_min = -*mx;
  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / y.size();

  double lo = spread * 1e-9;
  double hi = spread;
  while (profile_score(y, y_min, y_mean, hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (profile_score(y, y_min, y_mean, mid) < 0.0 ? lo : hi) = mid;
  }
  const double beta = 0.5 * (lo + hi);

  double den = 0.0;
  for (double v : y) den += std::exp(-(v - y_min) / beta);
  // maximum-form location of y, negated back to the minimum form
  const double mu = y_min + beta * std::log(static_cast<double>(y.size()) / den);
  return GumbelParams{-mu, beta};
}

std::vector<double> run_minima(const std::vector<RunResult>& runs) {
  if (runs.empty()) throw ArgumentError("run_minima: no runs given");
  std::vector<double> out;
  out.reserve(runs.size());
  for (const RunResult& r : runs) out.push_back(r.e_hat0);
  return out;
}

}  // namespace annealtrack

#pragma once

#include <vector>

#include "annealtrack/rng.hpp"
#include "annealtrack/samplers.hpp"

namespace annealtrack {

/// Minimum-Gumbel location/scale.
struct GumbelParams {
  double alpha = 0.0;
  double beta = 1.0;
};

/// p(x) = (1/beta) exp[(x-alpha)/beta - exp((x-alpha)/beta)], the minimum form.
double gumbel_pdf(double x, const GumbelParams& p);
double gumbel_log_pdf(double x, const GumbelParams& p);
double gumbel_loglik(const std::vector<double>& samples, const GumbelParams& p);

/// Inverse-CDF draw from the minimum Gumbel.
double gumbel_sample(const GumbelParams& p, Rng& rng);

/// Maximum-likelihood fit: bisection on the profile equation for beta, then
/// closed-form alpha. Needs >= 10 non-constant samples.
GumbelParams fit_gumbel_mle(const std::vector<double>& samples);

/// One minimum-energy sample per run, order preserved.
std::vector<double> run_minima(const std::vector<RunResult>& runs);

}  // namespace annealtrack

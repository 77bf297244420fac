#pragma once

#include <cstdint>
#include <vector>

#include "oxford/rng.hpp"

namespace oxford {

// Poisson(a) conditioned on being at least 1.
struct TruncPoissonParams {
  double a = 0.0;       // underlying Poisson rate
  double mean = 0.0;    // a / (1 - e^{-a})
  double sigma2 = 0.0;  // variance of the conditioned law
};

// Mean of the truncated Poisson with rate a: a / (1 - e^{-a}).
double trunc_mean(double a);

// Builds the parameter record for a known rate a > 0.
TruncPoissonParams trunc_params(double a);

// Inverts trunc_mean: finds a with a / (1 - e^{-a}) = mean.
// Throws InputError for non-finite input and DomainError for mean <= 1.
TruncPoissonParams solve_parameter(double mean);

double poisson_pmf(double rate, std::int64_t k);
double trunc_pmf(const TruncPoissonParams& params, std::int64_t k);

// P(Z <= k) and P(Z >= k) for Z truncated Poisson.
double trunc_cdf(const TruncPoissonParams& params, std::int64_t k);
double trunc_sf(const TruncPoissonParams& params, std::int64_t k);

// Degree law along a uniformly chosen edge, shifted by one:
// (k+1) P(Z = k+1) / E Z. For the truncated Poisson this is Poisson(a).
double size_biased_pmf(const TruncPoissonParams& params, std::int64_t k);

std::int64_t sample_poisson(double rate, Rng& rng);
std::int64_t sample_trunc(const TruncPoissonParams& params, Rng& rng);

// Repeated sampling from one truncated Poisson law. For a <= 30 this is
// inverse-CDF against a precomputed table; above that, Poisson(a) draws with
// zeros rejected.
class TruncPoissonSampler {
public:
  explicit TruncPoissonSampler(const TruncPoissonParams& params);

  std::int64_t operator()(Rng& rng) const;
  const TruncPoissonParams& params() const noexcept { return params_; }

private:
  TruncPoissonParams params_;
  std::vector<double> cdf_;  // cdf_[k-1] = P(Z <= k)
};

// Chernoff bounds for Z truncated Poisson with rate lambda:
//   P(Z <= lambda/2)        <= exp(-0.15 lambda)
//   P(Z >= L lambda)        <= exp(lambda - L lambda ln 2) / (1 - e^{-lambda}),  L > 1/ln 2
struct TailBounds {
  double lower;
  double upper;
};

double lower_tail_bound(double lambda);
double upper_tail_bound(double lambda, double L);
TailBounds tail_bounds(double lambda, double L);

}  // namespace oxford

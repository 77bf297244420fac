#include "oxford/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "oxford/error.hpp"

namespace oxford {

namespace {

constexpr std::int64_t kLogSpaceAbove = 30;
constexpr double kTableRateLimit = 30.0;

double one_minus_exp_neg(double a) { return -std::expm1(-a); }

double trunc_mean_derivative(double a) {
  const double q = one_minus_exp_neg(a);
  return (q - a * std::exp(-a)) / (q * q);
}

}  // namespace

double trunc_mean(double a) {
  if (a < 1e-8) return 1.0 + a / 2.0 + a * a / 12.0;
  return a / one_minus_exp_neg(a);
}

TruncPoissonParams trunc_params(double a) {
  if (!std::isfinite(a)) throw InputError("rate must be finite");
  if (a <= 0.0) throw DomainError("truncated Poisson rate must be positive, got " + std::to_string(a));
  TruncPoissonParams p;
  p.a = a;
  p.mean = trunc_mean(a);
  // E Z^2 = (a + a^2)/(1 - e^{-a}) = mean (1 + a), so var = mean (1 + a - mean).
  p.sigma2 = p.mean * (1.0 + a - p.mean);
  if (a < 1e-6) p.sigma2 = a / 2.0 + a * a / 6.0;
  return p;
}

TruncPoissonParams solve_parameter(double mean) {
  if (!std::isfinite(mean)) throw InputError("mean must be finite");
  if (mean <= 1.0)
    throw DomainError("no solution: f(a) > 1 for all a > 0 (requested mean " + std::to_string(mean) + ")");

  double lo = 1e-12;
  double hi = std::max(50.0, 2.0 * mean);
  if (trunc_mean(lo) >= mean) {
    // f(a) = 1 + a/2 + a^2/12 + O(a^4) near zero.
    return trunc_params(2.0 * (mean - 1.0));
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (trunc_mean(mid) < mean ? lo : hi) = mid;
  }
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double step = (trunc_mean(a) - mean) / trunc_mean_derivative(a);
    const double next = a - step;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    a = next;
  }
  return trunc_params(a);
}

double poisson_pmf(double rate, std::int64_t k) {
  if (k < 0) return 0.0;
  if (rate == 0.0) return k == 0 ? 1.0 : 0.0;
  if (k > kLogSpaceAbove) {
    return std::exp(-rate + static_cast<double>(k) * std::log(rate) - std::lgamma(static_cast<double>(k) + 1.0));
  }
  double p = std::exp(-rate);
  for (std::int64_t i = 1; i <= k; ++i) p *= rate / static_cast<double>(i);
  return p;
}

double trunc_pmf(const TruncPoissonParams& params, std::int64_t k) {
  if (k < 1) return 0.0;
  return poisson_pmf(params.a, k) / one_minus_exp_neg(params.a);
}

double trunc_cdf(const TruncPoissonParams& params, std::int64_t k) {
  double sum = 0.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    const double p = trunc_pmf(params, i);
    sum += p;
    if (static_cast<double>(i) > params.a && p < 1e-20 * sum) break;
  }
  return std::min(sum, 1.0);
}

double trunc_sf(const TruncPoissonParams& params, std::int64_t k) {
  if (k <= 1) return 1.0;
  if (static_cast<double>(k) <= params.a) return std::max(0.0, 1.0 - trunc_cdf(params, k - 1));
  // Summing the tail directly keeps precision far past the mode.
  double sum = 0.0;
  for (std::int64_t i = k;; ++i) {
    const double p = trunc_pmf(params, i);
    sum += p;
    if (p <= 1e-20 * sum || p == 0.0) break;
  }
  return sum;
}

double size_biased_pmf(const TruncPoissonParams& params, std::int64_t k) {
  return poisson_pmf(params.a, k);
}

std::int64_t sample_poisson(double rate, Rng& rng) {
  if (rate <= 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(rate);
  return dist(rng);
}

std::int64_t sample_trunc(const TruncPoissonParams& params, Rng& rng) {
  if (params.a > kTableRateLimit) {
    for (;;) {
      const auto k = sample_poisson(params.a, rng);
      if (k > 0) return k;
    }
  }
  const double u = rng.uniform();
  std::int64_t k = 1;
  double p = trunc_pmf(params, 1);
  double cdf = p;
  while (u >= cdf) {
    ++k;
    p *= params.a / static_cast<double>(k);
    if (p == 0.0) break;  // u fell in the rounding slack at the top of [0, 1)
    cdf += p;
  }
  return k;
}

TruncPoissonSampler::TruncPoissonSampler(const TruncPoissonParams& params) : params_(params) {
  if (params.a > kTableRateLimit) return;
  double p = trunc_pmf(params, 1);
  double cdf = p;
  std::int64_t k = 1;
  cdf_.push_back(cdf);
  while (cdf < 1.0 - 1e-16 && p > 0.0) {
    ++k;
    p *= params.a / static_cast<double>(k);
    cdf += p;
    cdf_.push_back(cdf);
  }
}

std::int64_t TruncPoissonSampler::operator()(Rng& rng) const {
  if (cdf_.empty()) return sample_trunc(params_, rng);
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it != cdf_.end()) return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
  // Past the table: continue the sequential summation.
  std::int64_t k = static_cast<std::int64_t>(cdf_.size());
  double cdf = cdf_.back();
  double p = trunc_pmf(params_, k);
  while (u >= cdf) {
    ++k;
    p *= params_.a / static_cast<double>(k);
    if (p == 0.0) break;
    cdf += p;
  }
  return k;
}

double lower_tail_bound(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  return std::exp(-0.15 * lambda);
}

double upper_tail_bound(double lambda, double L) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(L > 1.0 / std::numbers::ln2))
    throw DomainError("upper tail bound needs L > 1/ln 2, got L = " + std::to_string(L));
  return std::exp(lambda - L * lambda * std::numbers::ln2) / one_minus_exp_neg(lambda);
}

TailBounds tail_bounds(double lambda, double L) {
  return {lower_tail_bound(lambda), upper_tail_bound(lambda, L)};
}

}  // namespace oxford

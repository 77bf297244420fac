#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oxford/distributions.hpp"
#include "oxford/error.hpp"
#include "stats.hpp"

using namespace oxford;

TEST(SolveParameter, PublishedParameters) {
  EXPECT_NEAR(solve_parameter(38.0 / 20.0).a, 1.4577628194737775, 1e-9);
  EXPECT_NEAR(solve_parameter(67.0 / 22.0).a, 2.873359701430118, 1e-9);
  EXPECT_NEAR(solve_parameter(38.0 / 20.0).a, 1.458, 5e-4);
  EXPECT_NEAR(solve_parameter(67.0 / 22.0).a, 2.873, 5e-4);
}

TEST(SolveParameter, SmallA) {
  const auto p = solve_parameter(1.0001);
  EXPECT_NEAR(p.a, 0.00019999333377765602, 1e-12);
  EXPECT_NEAR(trunc_mean(p.a), 1.0001, 1e-12);
  // Below f(1e-12) the expansion takes over.
  const auto tiny = solve_parameter(1.0 + 1e-14);
  EXPECT_GT(tiny.a, 0.0);
  EXPECT_LT(tiny.a, 1e-12);
}

TEST(SolveParameter, Errors) {
  EXPECT_THROW(solve_parameter(1.0), DomainError);
  EXPECT_THROW(solve_parameter(0.5), DomainError);
  EXPECT_THROW(solve_parameter(std::nan("")), InputError);
  EXPECT_THROW(solve_parameter(INFINITY), InputError);
}

TEST(SolveParameter, RoundTripsAcrossRange) {
  for (double mean : {1.001, 1.1, 1.5, 2.0, 3.0455, 7.0, 25.0, 80.0, 400.0}) {
    const auto p = solve_parameter(mean);
    EXPECT_NEAR(trunc_mean(p.a) / mean, 1.0, 1e-12) << mean;
    EXPECT_DOUBLE_EQ(p.mean, trunc_mean(p.a));
  }
}

TEST(TruncParams, VarianceIdentity) {
  for (double a : {1e-8, 1e-4, 0.3, 1.5, 10.0}) {
    const auto p = trunc_params(a);
    double m1 = 0.0, m2 = 0.0;
    for (int k = 1; k < 200; ++k) {
      m1 += k * trunc_pmf(p, k);
      m2 += static_cast<double>(k) * k * trunc_pmf(p, k);
    }
    EXPECT_NEAR(p.mean, m1, 1e-10 * m1);
    EXPECT_NEAR(p.sigma2, m2 - m1 * m1, 1e-7 * std::max(1e-6, p.sigma2)) << a;
  }
}

TEST(TruncPmf, Values) {
  const auto p1 = trunc_params(1.0);
  EXPECT_EQ(trunc_pmf(p1, 0), 0.0);
  EXPECT_EQ(trunc_pmf(trunc_params(7.0), 0), 0.0);
  EXPECT_NEAR(trunc_pmf(p1, 1), 0.5819767068693265, 1e-14);
}

TEST(TruncPmf, Normalization) {
  for (double a : {0.01, 0.5, 2.0, 10.0, 40.0}) {
    const auto p = trunc_params(a);
    double s = 0.0;
    for (int k = 1; k <= 200; ++k) s += trunc_pmf(p, k);
    EXPECT_NEAR(s, 1.0, 1e-12) << a;
  }
  const auto p2 = trunc_params(2.0);
  double s = 0.0;
  for (int k = 1; k <= 60; ++k) s += trunc_pmf(p2, k);
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(TruncPmf, CdfAndSf) {
  const auto p = trunc_params(2.5);
  for (int k = 1; k < 20; ++k) EXPECT_NEAR(trunc_cdf(p, k) + trunc_sf(p, k + 1), 1.0, 1e-13);
  EXPECT_EQ(trunc_cdf(p, 0), 0.0);
  EXPECT_NEAR(trunc_sf(p, 1), 1.0, 1e-15);
}

TEST(PoissonPmf, LogSpaceContinuity) {
  for (double rate : {5.0, 30.0, 100.0}) {
    double s = 0.0;
    for (int k = 0; k < 400; ++k) s += poisson_pmf(rate, k);
    EXPECT_NEAR(s, 1.0, 1e-12) << rate;
  }
  EXPECT_NEAR(poisson_pmf(30.0, 31) / poisson_pmf(30.0, 30), 30.0 / 31.0, 1e-12);
}

TEST(SizeBiased, IsPoisson) {
  EXPECT_NEAR(size_biased_pmf(trunc_params(1.5), 0), 0.22313016014842982, 1e-14);
  for (double a : {0.5, 1.5, 3.0}) {
    const auto p = trunc_params(a);
    double s = 0.0;
    for (int k = 0; k <= 50; ++k) {
      const double direct = (k + 1) * trunc_pmf(p, k + 1) / p.mean;
      EXPECT_NEAR(size_biased_pmf(p, k), direct, 1e-12);
      EXPECT_NEAR(size_biased_pmf(p, k), poisson_pmf(a, k), 1e-12);
      s += size_biased_pmf(p, k);
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Sampling, TinyRateGivesOne) {
  Rng rng(5);
  const auto p = trunc_params(1e-4);
  const TruncPoissonSampler sampler(p);
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += sampler(rng) == 1;
  EXPECT_GE(ones, n - 30);  // P(Z > 1) is about 5e-5
  for (int i = 0; i < 1000; ++i) EXPECT_GE(sample_trunc(p, rng), 1);
}

TEST(Sampling, MeanWithinThreeSE) {
  Rng rng(11);
  const auto p = trunc_params(1.5);
  EXPECT_NEAR(p.mean, 1.9308, 1e-4);
  const TruncPoissonSampler sampler(p);
  const int n = 1000000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += static_cast<double>(sampler(rng));
  EXPECT_LE(std::abs(s / n - p.mean), 3.0 * std::sqrt(p.sigma2 / n));
}

TEST(Sampling, ChiSquareAtRateTwo) {
  const auto p = trunc_params(2.0);
  const int kmax = 15;
  for (int method = 0; method < 2; ++method) {
    Rng rng(17 + method);
    const TruncPoissonSampler sampler(p);
    std::vector<std::uint64_t> counts(kmax + 1, 0);
    for (int i = 0; i < 1000000; ++i) {
      const auto k = method ? sample_trunc(p, rng) : sampler(rng);
      ASSERT_GE(k, 1);
      ++counts[std::min<std::int64_t>(k, kmax + 1) - 1];
    }
    std::vector<double> probs;
    for (int k = 1; k <= kmax; ++k) probs.push_back(trunc_pmf(p, k));
    probs.push_back(trunc_sf(p, kmax + 1));
    EXPECT_GT(chi_square_pvalue(counts, probs), 0.001) << method;
  }
}

TEST(Sampling, LargeRateUsesRejection) {
  Rng rng(23);
  const auto p = trunc_params(45.0);
  const TruncPoissonSampler sampler(p);
  const int n = 200000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += static_cast<double>(sampler(rng));
  EXPECT_LE(std::abs(s / n - p.mean), 3.0 * std::sqrt(p.sigma2 / n));
}

TEST(TailBounds, LowerTail) {
  EXPECT_NEAR(lower_tail_bound(10.0), 0.22313016014842982, 1e-14);
  const double exact = trunc_cdf(trunc_params(10.0), 5);
  EXPECT_NEAR(exact, 0.0670436067243056, 1e-12);
  EXPECT_LE(exact, lower_tail_bound(10.0));
}

TEST(TailBounds, UpperTail) {
  EXPECT_NEAR(std::log(upper_tail_bound(20.0, 3.0)), -21.588830831535564, 1e-10);
  EXPECT_THROW(upper_tail_bound(20.0, 1.0), DomainError);
  EXPECT_THROW(lower_tail_bound(0.0), DomainError);
  const auto b = tail_bounds(20.0, 3.0);
  EXPECT_EQ(b.lower, lower_tail_bound(20.0));
  EXPECT_EQ(b.upper, upper_tail_bound(20.0, 3.0));
}

TEST(TailBounds, DominateExactTails) {
  for (double lambda : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
    const auto p = trunc_params(lambda);
    const auto half = static_cast<std::int64_t>(std::floor(lambda / 2.0));
    EXPECT_LE(trunc_cdf(p, half), lower_tail_bound(lambda)) << lambda;
    for (double L : {1.0 / std::numbers::ln2 + 0.01, 2.0, 3.0, 5.0}) {
      const auto k = static_cast<std::int64_t>(std::ceil(L * lambda));
      EXPECT_LE(trunc_sf(p, k), upper_tail_bound(lambda, L)) << lambda << " " << L;
    }
  }
}

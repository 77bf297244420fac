#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "oxford/distributions.hpp"
#include "oxford/error.hpp"
#include "oxford/generators.hpp"
#include "stats.hpp"

using namespace oxford;

namespace {

// Chi-square homogeneity p-value for two histograms over the same cells.
double two_sample_pvalue(const std::map<std::size_t, std::uint64_t>& x, const std::map<std::size_t, std::uint64_t>& y) {
  double nx = 0, ny = 0;
  for (auto& [k, c] : x) nx += static_cast<double>(c);
  for (auto& [k, c] : y) ny += static_cast<double>(c);
  std::map<std::size_t, std::pair<double, double>> cells;
  for (auto& [k, c] : x) cells[k].first = static_cast<double>(c);
  for (auto& [k, c] : y) cells[k].second = static_cast<double>(c);
  double stat = 0.0;
  int df = -1;
  double pool_x = 0, pool_y = 0;
  auto add = [&](double cx, double cy) {
    const double tot = cx + cy;
    const double ex = tot * nx / (nx + ny), ey = tot * ny / (nx + ny);
    stat += (cx - ex) * (cx - ex) / ex + (cy - ey) * (cy - ey) / ey;
    ++df;
  };
  for (auto& [k, c] : cells) {
    if (c.first + c.second < 20) {
      pool_x += c.first;
      pool_y += c.second;
    } else {
      add(c.first, c.second);
    }
  }
  if (pool_x + pool_y >= 20) add(pool_x, pool_y);
  if (df < 1) return 1.0;
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST(ModelKindNames, RoundTrip) {
  for (auto k : {ModelKind::GR, ModelKind::GR1, ModelKind::TP, ModelKind::ER})
    EXPECT_EQ(parse_model_kind(to_string(k)), k);
  EXPECT_EQ(parse_model_kind("TP"), ModelKind::TP);
  EXPECT_THROW(parse_model_kind("xyz"), InputError);
}

TEST(Gr, EdgeCases) {
  Rng rng(1);
  EXPECT_EQ(gen_gr(3, 4, 0, rng).t(), 0u);
  const auto g = gen_gr(1, 1, 3, rng);
  ASSERT_EQ(g.t(), 3u);
  for (const auto& e : g.edges()) EXPECT_EQ(e, (Edge{0, 0}));
}

TEST(Gr, BirthdayProbability) {
  Rng rng(2);
  const int reps = 10000;
  int distinct = 0;
  for (int r = 0; r < reps; ++r) distinct += !gen_gr(1000, 1000, 1000, rng).has_parallel_edges();
  const double p = static_cast<double>(distinct) / reps;
  const double target = std::exp(-0.5);
  EXPECT_LE(std::abs(p - target), 3.0 * std::sqrt(target * (1 - target) / reps));
}

TEST(Gr1, TwoByTwoUniformOverValidSequences) {
  Rng rng(3);
  std::map<std::pair<Edge, Edge>, std::uint64_t> seen;
  const int samples = 100000;
  for (int s = 0; s < samples; ++s) {
    const auto g = gen_gr1_rejection(2, 2, 2, rng);
    ++seen[{g.edges()[0], g.edges()[1]}];
  }
  ASSERT_EQ(seen.size(), 4u);
  std::vector<std::uint64_t> counts;
  for (auto& [k, c] : seen) {
    EXPECT_NE(k.first.left, k.second.left);
    EXPECT_NE(k.first.right, k.second.right);
    counts.push_back(c);
  }
  EXPECT_GT(chi_square_pvalue(counts, std::vector<double>(4, 0.25)), 0.001);
}

TEST(Gr1, ForcedAndInvalid) {
  Rng rng(4);
  const auto g = gen_gr1_rejection(1, 1, 1, rng, 1);
  EXPECT_EQ(g.t(), 1u);
  EXPECT_THROW(gen_gr1_rejection(2, 2, 1, rng), InputError);
  EXPECT_THROW(gen_tp(3, 2, 2, rng), InputError);
  // Acceptance at (30,30,30) is tiny, so one attempt runs out.
  EXPECT_THROW(gen_gr1_rejection(30, 30, 30, rng, 1), AttemptsExhausted);
  try {
    gen_gr1_rejection(30, 30, 30, rng, 1);
  } catch (const AttemptsExhausted& e) {
    EXPECT_GT(e.acceptance_estimate(), 0.0);
    EXPECT_LT(e.acceptance_estimate(), 1e-6);
  }
}

TEST(Tp, Degenerate) {
  Rng rng(5);
  const auto g = gen_tp(1, 1, 4, rng);
  ASSERT_EQ(g.t(), 4u);
  for (const auto& e : g.edges()) EXPECT_EQ(e, (Edge{0, 0}));
  EXPECT_EQ(conditioned_degrees(5, 5, rng), std::vector<std::size_t>(5, 1));
  EXPECT_EQ(conditioned_degrees(1, 9, rng), std::vector<std::size_t>{9});
  const auto perfect = gen_tp(4, 4, 4, rng);
  EXPECT_EQ(min_degree(perfect).left, 1u);
  EXPECT_EQ(max_degree(perfect), 1u);
}

TEST(Tp, DegreeSumsAndCoverage) {
  Rng rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    const auto g = gen_tp(13, 17, 40, rng);
    const auto l = g.left_degrees(), r = g.right_degrees();
    EXPECT_EQ(std::accumulate(l.begin(), l.end(), std::size_t{0}), 40u);
    EXPECT_EQ(std::accumulate(r.begin(), r.end(), std::size_t{0}), 40u);
    EXPECT_GE(min_degree(g).left, 1u);
    EXPECT_GE(min_degree(g).right, 1u);
  }
}

TEST(Tp, ConditionedDegreesMatchExactMarginal) {
  // Degree of vertex 0 given the sum: P(Z1 = k) P(S_{c-1} = total - k) / P(S_c = total),
  // against GR1 rejection, which has the same conditioned degree law.
  Rng rng(7);
  std::map<std::size_t, std::uint64_t> tp, gr1;
  const int samples = 60000;
  for (int s = 0; s < samples; ++s) {
    ++tp[conditioned_degrees(6, 11, rng)[0]];
    ++gr1[gen_gr1_rejection(6, 5, 11, rng).left_degrees()[0]];
  }
  EXPECT_GT(two_sample_pvalue(tp, gr1), 0.001);
}

TEST(Tp, RightDegreeHistogramMatchesGr1) {
  Rng rng(8);
  std::map<std::size_t, std::uint64_t> tp, gr1;
  for (int s = 0; s < 40000; ++s) {
    for (auto d : gen_tp(5, 7, 12, rng).right_degrees()) ++tp[d];
    for (auto d : gen_gr1_rejection(5, 7, 12, rng).right_degrees()) ++gr1[d];
  }
  EXPECT_GT(two_sample_pvalue(tp, gr1), 0.001);
}

TEST(Er, Extremes) {
  Rng rng(9);
  EXPECT_EQ(gen_er(4, 5, 0.0, rng).t(), 0u);
  const auto full = gen_er(4, 5, 1.0, rng);
  EXPECT_EQ(full.t(), 20u);
  EXPECT_FALSE(full.has_parallel_edges());
  EXPECT_THROW(gen_er(4, 5, 1.5, rng), InputError);
}

TEST(Er, ParamsFor) {
  const auto p = er_params_for(22, 27, 44);
  EXPECT_NEAR(p.a, 1.59362426004004, 1e-9);
  EXPECT_NEAR(p.b, 1.0714787784690563, 1e-9);
  EXPECT_EQ(p.M, 28u);
  EXPECT_EQ(p.N, 41u);
  EXPECT_NEAR(p.p, 0.03880760398832627, 1e-12);
}

TEST(Er, NonIsolatedLeft) {
  const auto params = er_params_for(22, 27, 44);
  Rng rng(10);
  const int reps = 10000;
  double s = 0, ss = 0;
  for (int r = 0; r < reps; ++r) {
    const auto deg = gen_er(params.M, params.N, params.p, rng).left_degrees();
    const double x = static_cast<double>(std::count_if(deg.begin(), deg.end(), [](auto d) { return d > 0; }));
    s += x;
    ss += x * x;
  }
  const double mean = s / reps;
  const double se = std::sqrt((ss / reps - mean * mean) / (reps - 1));
  const double expected = params.M * (1.0 - std::pow(1.0 - params.p, static_cast<double>(params.N)));
  EXPECT_LE(std::abs(mean - expected), 3.0 * se);
}

TEST(Er, EdgeProbability) {
  Rng rng(12);
  const int reps = 2000;
  double s = 0;
  for (int r = 0; r < reps; ++r) s += static_cast<double>(gen_er(30, 40, 0.04, rng).t());
  const double var = 1200 * 0.04 * 0.96;
  EXPECT_LE(std::abs(s / reps - 48.0), 3.0 * std::sqrt(var / reps));
}

TEST(Generate, SeedDeterminism) {
  for (auto kind : {ModelKind::GR, ModelKind::GR1, ModelKind::TP, ModelKind::ER}) {
    ModelSpec spec;
    spec.kind = kind;
    spec.m = 8;
    spec.n = 9;
    spec.t = 20;
    spec.p = 0.3;
    spec.seed = 99;
    const auto a = generate(spec);
    const auto b = generate(spec);
    EXPECT_EQ(a, b);
    spec.seed = 100;
    EXPECT_NE(a, generate(spec)) << to_string(kind);
  }
}

TEST(Generate, ValidatesSpec) {
  ModelSpec spec;
  spec.kind = ModelKind::GR1;
  spec.m = 2;
  spec.n = 2;
  spec.t = 1;
  EXPECT_THROW(generate(spec), InputError);
  spec.kind = ModelKind::ER;
  spec.p = -0.1;
  EXPECT_THROW(generate(spec), InputError);
  spec.kind = ModelKind::GR;
  spec.m = 0;
  EXPECT_THROW(generate(spec), InputError);
}

#include "oxford/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oxford/error.hpp"

namespace oxford {

namespace mp = boost::multiprecision;

double log_of(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const auto top = mp::msb(x);
  if (top < 63) return std::log(static_cast<double>(static_cast<std::uint64_t>(x)));
  const auto shift = top - 62;
  const auto head = static_cast<std::uint64_t>(x >> shift);
  return std::log(static_cast<double>(head)) + static_cast<double>(shift) * std::numbers::ln2;
}

BigInt surjections(std::size_t t, std::size_t k) {
  if (k == 0) return t == 0 ? 1 : 0;
  if (t < k) return 0;
  BigInt sum = 0;
  BigInt binom = 1;  // C(k, j)
  for (std::size_t j = 0; j <= k; ++j) {
    const BigInt term = binom * mp::pow(BigInt(k - j), static_cast<unsigned>(t));
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
    binom = binom * (k - j) / (j + 1);
  }
  return sum;
}

BigInt count_exact(std::size_t m, std::size_t n, std::size_t t) {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  if (t < std::max(m, n)) return 0;
  return surjections(t, m) * surjections(t, n);
}

double count_exact_log(std::size_t m, std::size_t n, std::size_t t) { return log_of(count_exact(m, n, t)); }

namespace {

// log(e^x - 1) without overflow for large x.
double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

TruncPoissonParams side_params(std::size_t t, std::size_t k, const char* side) {
  if (k < 1) throw InputError(std::string(side) + " vertex count must be at least 1");
  const double mean = static_cast<double>(t) / static_cast<double>(k);
  if (!(mean > 1.0))
    throw DomainError(std::string("t/") + side + " must exceed 1 to define the degree parameter (t=" +
                      std::to_string(t) + ", " + side + "=" + std::to_string(k) + ")");
  return solve_parameter(mean);
}

}  // namespace

double count_asymptotic_log(std::size_t m, std::size_t n, std::size_t t) {
  const auto a = side_params(t, m, "m");
  const auto b = side_params(t, n, "n");
  const double td = static_cast<double>(t);
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return 2.0 * std::lgamma(td + 1.0) + md * log_expm1(a.a) - td * std::log(a.a) + nd * log_expm1(b.a) -
         td * std::log(b.a) - std::log(2.0 * std::numbers::pi * std::sqrt(a.sigma2 * b.sigma2 * md * nd));
}

double birthday_factor(std::size_t m, std::size_t n, std::size_t t) {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  const double td = static_cast<double>(t);
  return std::exp(-td * td / (2.0 * static_cast<double>(m) * static_cast<double>(n)));
}

Bracket corollary1_bracket(std::size_t m, std::size_t n, std::size_t t) {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  const double td = static_cast<double>(t);
  return {std::exp(-(td / static_cast<double>(m)) * (td / static_cast<double>(n))), 1.0};
}

double composed_offspring_gf(double a, double b, double z) { return std::exp(b * (std::exp(a * (z - 1.0)) - 1.0)); }

namespace {

double composed_slope(double a, double b, double z) {
  const double inner = std::exp(a * (z - 1.0));
  return a * b * inner * std::exp(b * (inner - 1.0));
}

// Smallest fixed point of z -> psi2(psi1(z)) in [0, 1].
double smallest_fixed_point(double a, double b, std::size_t& iterations) {
  double z = 0.0;
  iterations = 0;
  for (; iterations < 1'000'000; ++iterations) {
    const double next = composed_offspring_gf(a, b, z);
    const double delta = next - z;
    z = next;
    if (std::abs(delta) <= 1e-13) break;
  }
  // Newton polish; the slope at the smallest root is below 1 when ab > 1.
  for (int k = 0; k < 5; ++k) {
    const double h = composed_offspring_gf(a, b, z) - z;
    const double slope = composed_slope(a, b, z) - 1.0;
    if (h == 0.0 || slope >= 0.0) break;
    const double next = z - h / slope;
    if (!(next >= 0.0 && next < 1.0)) break;
    if (std::abs(composed_offspring_gf(a, b, next) - next) >= std::abs(h)) break;
    z = next;
  }
  return z;
}

}  // namespace

Extinction extinction(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("extinction needs a, b > 0");
  Extinction e;
  if (a * b <= 1.0) return e;  // subcritical or critical: extinction is certain
  e.zeta_R = smallest_fixed_point(a, b, e.iterations);
  std::size_t other_iterations = 0;
  e.zeta_L = smallest_fixed_point(b, a, other_iterations);
  e.iterations += other_iterations;
  e.residual = std::abs(composed_offspring_gf(a, b, e.zeta_R) - e.zeta_R);
  // phi(z) = (e^{az} - 1)/(e^a - 1), the truncated Poisson generating function.
  e.xi_L = std::expm1(a * e.zeta_R) / std::expm1(a);
  e.xi_R = std::expm1(b * e.zeta_L) / std::expm1(b);
  return e;
}

double extinction_by_bisection(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("extinction needs a, b > 0");
  if (a * b <= 1.0) return 1.0;
  // The composed map is convex; locate where its slope reaches 1, then
  // bisect on [0, that point] where g(z) - z changes sign exactly once.
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (composed_slope(a, b, mid) < 1.0 ? lo : hi) = mid;
  }
  double left = 0.0, right = lo;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (left + right);
    (composed_offspring_gf(a, b, mid) - mid > 0.0 ? left : right) = mid;
  }
  return 0.5 * (left + right);
}

double expected_trees_at(std::size_t i, std::size_t j, double a, double b, double t) {
  if (i < 1 || j < 1) throw InputError("tree sizes must be at least 1");
  const double id = static_cast<double>(i);
  const double jd = static_cast<double>(j);
  const double log_value = (jd - 1.0) * std::log(id) + (id - 1.0) * std::log(jd) - std::lgamma(id + 1.0) -
                           std::lgamma(jd + 1.0) + jd * (std::log(a) - b) + id * (std::log(b) - a) + std::log(t) -
                           std::log(a) - std::log(b);
  return std::exp(log_value);
}

double expected_trees(std::size_t i, std::size_t j, std::size_t m, std::size_t n, std::size_t t) {
  const auto a = side_params(t, m, "m");
  const auto b = side_params(t, n, "n");
  return expected_trees_at(i, j, a.a, b.a, static_cast<double>(t));
}

BigInt labeled_tree_count(std::size_t i, std::size_t j) {
  if (i < 1 || j < 1) throw InputError("tree sizes must be at least 1");
  return mp::pow(BigInt(i), static_cast<unsigned>(j - 1)) * mp::pow(BigInt(j), static_cast<unsigned>(i - 1));
}

double er_expected_trees(std::size_t i, std::size_t j, std::size_t M, std::size_t N, double p) {
  if (!(p > 0.0)) throw DomainError("er_expected_trees needs p > 0");
  const double a = static_cast<double>(N) * p;
  const double b = static_cast<double>(M) * p;
  // Same shape as expected_trees with t / (ab) replaced by 1 / p.
  return expected_trees_at(i, j, a, b, a * b / p);
}

namespace {

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt out = 1;
  for (std::size_t r = 0; r < k; ++r) out = out * (n - r) / (r + 1);
  return out;
}

}  // namespace

double expected_trees_finite(std::size_t i, std::size_t j, std::size_t m, std::size_t n, std::size_t t) {
  if (i < 1 || j < 1) throw InputError("tree sizes must be at least 1");
  const std::size_t e = i + j - 1;
  if (i > m || j > n || e > t) return 0.0;
  const BigInt denom = count_exact(m, n, t);
  if (denom == 0) throw DomainError("no graph with every vertex covered: t < max(m, n)");
  BigInt num = binomial(m, i) * binomial(n, j) * labeled_tree_count(i, j);
  for (std::size_t k = 0; k < e; ++k) num *= t - k;
  num *= surjections(t - e, m - i) * surjections(t - e, n - j);
  if (num == 0) return 0.0;
  return std::exp(log_of(num) - log_of(denom));
}

double er_expected_trees_finite(std::size_t i, std::size_t j, std::size_t M, std::size_t N, double p) {
  if (i < 1 || j < 1) throw InputError("tree sizes must be at least 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("er_expected_trees_finite needs 0 < p < 1");
  if (i > M || j > N) return 0.0;
  const double id = static_cast<double>(i), jd = static_cast<double>(j);
  const double e = id + jd - 1.0;
  const double absent = id * static_cast<double>(N) + jd * static_cast<double>(M) - id * jd - e;
  const auto log_choose = [](double nn, double k) {
    return std::lgamma(nn + 1.0) - std::lgamma(k + 1.0) - std::lgamma(nn - k + 1.0);
  };
  return std::exp(log_choose(static_cast<double>(M), id) + log_choose(static_cast<double>(N), jd) +
                  (jd - 1.0) * std::log(id) + (id - 1.0) * std::log(jd) + e * std::log(p) + absent * std::log1p(-p));
}

double connectivity_c(std::size_t m, std::size_t n, std::size_t t) {
  if (m + n < 2) throw InputError("connectivity parameter needs m + n >= 2");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return static_cast<double>(t) * (md + nd) / (md * nd * std::log(md + nd));
}

std::size_t t_for_connectivity(std::size_t m, std::size_t n, double c) {
  if (m + n < 2) throw InputError("connectivity parameter needs m + n >= 2");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return static_cast<std::size_t>(std::llround(c * md * nd * std::log(md + nd) / (md + nd)));
}

std::size_t t_for_ab(std::size_t m, std::size_t n, double target) {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  if (!(target > 0.0) || !std::isfinite(target)) throw InputError("target ab must be positive and finite");
  const auto product = [&](std::size_t t) {
    return solve_parameter(static_cast<double>(t) / static_cast<double>(m)).a *
           solve_parameter(static_cast<double>(t) / static_cast<double>(n)).a;
  };
  std::size_t lo = std::max(m, n) + 1;  // smallest t with t/m, t/n > 1
  if (product(lo) >= target) return lo;
  std::size_t hi = 2 * lo;
  while (product(hi) < target) hi *= 2;
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    (product(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

double poisson_tail(double mean, std::int64_t k, PoissonTail kind) {
  if (!(mean >= 0.0)) throw DomainError("Poisson mean must be non-negative");
  if (kind == PoissonTail::Equals) return poisson_pmf(mean, k);
  if (k <= 0) return 1.0;
  double below = 0.0;
  for (std::int64_t i = 0; i < k; ++i) below += poisson_pmf(mean, i);
  if (below < 0.5) return 1.0 - below;
  // Sum the upper tail directly when it is small.
  double upper = 0.0;
  for (std::int64_t i = k;; ++i) {
    const double p = poisson_pmf(mean, i);
    upper += p;
    if (static_cast<double>(i) > mean && p <= 1e-18 * upper) break;
    if (p == 0.0 && static_cast<double>(i) > mean) break;
  }
  return upper;
}

PredictionReport predict(std::size_t m, std::size_t n, std::size_t t, std::size_t max_tree) {
  if (max_tree < 1) throw InputError("max_tree must be at least 1");
  PredictionReport r;
  r.m = m;
  r.n = n;
  r.t = t;
  r.a = side_params(t, m, "m");
  r.b = side_params(t, n, "n");
  r.ab = r.a.a * r.b.a;
  r.extinction = extinction(r.a.a, r.b.a);
  r.giant_left_frac = 1.0 - r.extinction.xi_L;
  r.giant_right_frac = 1.0 - r.extinction.xi_R;
  r.c = connectivity_c(m, n, t);
  r.max_tree = max_tree;
  r.ea.assign(max_tree, std::vector<double>(max_tree, 0.0));
  for (std::size_t i = 1; i <= max_tree; ++i)
    for (std::size_t j = 1; j <= max_tree; ++j)
      r.ea[i - 1][j - 1] = expected_trees_at(i, j, r.a.a, r.b.a, static_cast<double>(t));
  if (m <= kExactCountLimit && n <= kExactCountLimit) r.log_count_exact = count_exact_log(m, n, t);
  r.log_count_asymptotic = count_asymptotic_log(m, n, t);
  r.birthday = birthday_factor(m, n, t);
  r.corollary1 = corollary1_bracket(m, n, t);
  return r;
}

}  // namespace oxford

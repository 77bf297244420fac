#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oxford/distributions.hpp"

namespace oxford {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of a non-negative big integer; -inf for zero.
double log_of(const BigInt& x);

// Number of maps from t labelled balls onto k boxes with no box empty:
// sum_j (-1)^j C(k, j) (k - j)^t, evaluated exactly.
BigInt surjections(std::size_t t, std::size_t k);

// |G^r_1(m,n,t)| counted as ordered edge sequences: (mn)^t P(A) P(B), which
// is surjections(t, m) * surjections(t, n) since rows and columns are
// independent under sampling with replacement.
BigInt count_exact(std::size_t m, std::size_t n, std::size_t t);
double count_exact_log(std::size_t m, std::size_t n, std::size_t t);

// log[(t!)^2 (e^a-1)^m a^-t (e^b-1)^n b^-t / (2 pi sigma_a sigma_b sqrt(mn))].
double count_asymptotic_log(std::size_t m, std::size_t n, std::size_t t);

// exp(-t^2 / 2mn): probability that t draws with replacement are distinct.
double birthday_factor(std::size_t m, std::size_t n, std::size_t t);

struct Bracket {
  double lo;
  double hi;
};
// Limits of |G_1| / |G^r_1|: [exp(-(t/m)(t/n)), 1].
Bracket corollary1_bracket(std::size_t m, std::size_t n, std::size_t t);

// Extinction probabilities of the two-type branching process with
// Poisson(a) and Poisson(b) offspring after the first generation.
struct Extinction {
  double zeta_L = 1.0;
  double zeta_R = 1.0;
  double xi_L = 1.0;
  double xi_R = 1.0;
  std::size_t iterations = 0;
  double residual = 0.0;  // |psi2(psi1(zeta_R)) - zeta_R|
};

Extinction extinction(double a, double b);

// Independent route for zeta_R: bisection on psi2(psi1(z)) - z below the
// point where the composed map has slope 1.
double extinction_by_bisection(double a, double b);

// psi2(psi1(z)) with psi1(z) = exp(a(z-1)), psi2(z) = exp(b(z-1)).
double composed_offspring_gf(double a, double b, double z);

// Limit of the expected number of (i, j) tree components in G^r_1(m,n,t).
double expected_trees(std::size_t i, std::size_t j, std::size_t m, std::size_t n, std::size_t t);
double expected_trees_at(std::size_t i, std::size_t j, double a, double b, double t);

// Exact expectation of the number of (i, j) tree components at finite
// (m, n, t): C(m,i) C(n,j) i^{j-1} j^{i-1} t!/(t-e)! S(t-e, m-i) S(t-e, n-j)
// / (S(t,m) S(t,n)) with e = i + j - 1 and S the surjection count.
double expected_trees_finite(std::size_t i, std::size_t j, std::size_t m, std::size_t n, std::size_t t);

// i^{j-1} j^{i-1}, exact.
BigInt labeled_tree_count(std::size_t i, std::size_t j);

// Expected number of (i, j) trees in the bipartite G(M, N, p) with
// a = N p and b = M p.
double er_expected_trees(std::size_t i, std::size_t j, std::size_t M, std::size_t N, double p);

// Exact finite-size counterpart in G(M, N, p):
// C(M,i) C(N,j) i^{j-1} j^{i-1} p^e (1-p)^{iN + jM - ij - e}.
double er_expected_trees_finite(std::size_t i, std::size_t j, std::size_t M, std::size_t N, double p);

// c in t = c (mn/(m+n)) ln(m+n), and its inverse rounded to an integer.
double connectivity_c(std::size_t m, std::size_t n, std::size_t t);
std::size_t t_for_connectivity(std::size_t m, std::size_t n, double c);

// Smallest t with a(t/m) * b(t/n) >= target, where f(a) = t/m, f(b) = t/n.
std::size_t t_for_ab(std::size_t m, std::size_t n, double target);

enum class PoissonTail { AtLeast, Equals };
// P(X >= k) or P(X = k) for X ~ Poisson(mean).
double poisson_tail(double mean, std::int64_t k, PoissonTail kind);

struct PredictionReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  TruncPoissonParams a;
  TruncPoissonParams b;
  double ab = 0.0;
  Extinction extinction;
  double giant_left_frac = 0.0;
  double giant_right_frac = 0.0;
  double c = 0.0;
  std::size_t max_tree = 0;
  std::vector<std::vector<double>> ea;  // ea[i-1][j-1] = EA_{i,j}
  std::optional<double> log_count_exact;
  double log_count_asymptotic = 0.0;
  double birthday = 0.0;
  Bracket corollary1{0.0, 1.0};
};

// Sizes above this skip the exact count in predict().
inline constexpr std::size_t kExactCountLimit = 400;

PredictionReport predict(std::size_t m, std::size_t n, std::size_t t, std::size_t max_tree = 4);

}  // namespace oxford

#include "oxford/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "oxford/distributions.hpp"
#include "oxford/error.hpp"

namespace oxford {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::GR: return "gr";
    case ModelKind::GR1: return "gr1";
    case ModelKind::TP: return "tp";
    case ModelKind::ER: return "er";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "gr") return ModelKind::GR;
  if (lower == "gr1") return ModelKind::GR1;
  if (lower == "tp") return ModelKind::TP;
  if (lower == "er") return ModelKind::ER;
  throw InputError("unknown model '" + std::string(name) + "' (expected gr, gr1, tp or er)");
}

namespace {

void require_covering_t(std::size_t m, std::size_t n, std::size_t t) {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  if (t < std::max(m, n))
    throw InputError("t >= max(m, n) required so every vertex can have degree >= 1 (m=" + std::to_string(m) +
                     ", n=" + std::to_string(n) + ", t=" + std::to_string(t) + ")");
}

}  // namespace

void ModelSpec::validate() const {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  switch (kind) {
    case ModelKind::GR: break;
    case ModelKind::GR1:
    case ModelKind::TP: require_covering_t(m, n, t); break;
    case ModelKind::ER:
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1], got " + std::to_string(p));
      break;
  }
  if (max_attempts < 1) throw InputError("max_attempts must be at least 1");
}

BipartiteMultigraph gen_gr(std::size_t m, std::size_t n, std::size_t t, Rng& rng) {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  std::vector<Edge> edges(t);
  const std::uint64_t slots = static_cast<std::uint64_t>(m) * n;
  for (auto& e : edges) {
    const auto s = rng.below(slots);
    e.left = static_cast<Vertex>(s / n);
    e.right = static_cast<Vertex>(s % n);
  }
  return BipartiteMultigraph(m, n, std::move(edges));
}

double gr1_acceptance_estimate(std::size_t m, std::size_t n, std::size_t t) {
  const double td = static_cast<double>(t);
  const auto side = [td](std::size_t k) {
    return static_cast<double>(k) * std::log1p(-std::exp(-td / static_cast<double>(k)));
  };
  return std::exp(side(m) + side(n));
}

BipartiteMultigraph gen_gr1_rejection(std::size_t m, std::size_t n, std::size_t t, Rng& rng,
                                      std::uint64_t max_attempts) {
  require_covering_t(m, n, t);
  if (max_attempts < 1) throw InputError("max_attempts must be at least 1");
  std::vector<std::size_t> left(m), right(n);
  const std::uint64_t slots = static_cast<std::uint64_t>(m) * n;
  std::vector<Edge> edges(t);
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::fill(left.begin(), left.end(), 0);
    std::fill(right.begin(), right.end(), 0);
    std::size_t covered_left = 0, covered_right = 0;
    for (auto& e : edges) {
      const auto s = rng.below(slots);
      e.left = static_cast<Vertex>(s / n);
      e.right = static_cast<Vertex>(s % n);
      covered_left += left[e.left]++ == 0;
      covered_right += right[e.right]++ == 0;
    }
    if (covered_left == m && covered_right == n) return BipartiteMultigraph(m, n, edges);
  }
  throw AttemptsExhausted("gr1: no sample with min degree >= 1 after " + std::to_string(max_attempts) +
                              " attempts (estimated acceptance " +
                              std::to_string(gr1_acceptance_estimate(m, n, t)) + ")",
                          gr1_acceptance_estimate(m, n, t));
}

std::vector<std::size_t> conditioned_degrees(std::size_t count, std::size_t total, Rng& rng,
                                             std::uint64_t max_attempts) {
  if (count < 1) throw InputError("degree vector needs at least one vertex");
  if (total < count) throw InputError("degree total below vertex count");
  // Degenerate conditionings with a single admissible vector.
  if (total == count) return std::vector<std::size_t>(count, 1);
  if (count == 1) return {total};

  const auto params = solve_parameter(static_cast<double>(total) / static_cast<double>(count));
  const TruncPoissonSampler sampler(params);
  // The last degree is forced to total - sum and accepted with probability
  // pmf(last) / max pmf, which leaves the conditional law unchanged.
  const auto mode = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(params.a)));
  const double pmf_max = std::max(trunc_pmf(params, mode), trunc_pmf(params, mode + 1));
  std::vector<std::size_t> deg(count);
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::size_t sum = 0;
    bool overflow = false;
    for (std::size_t v = 0; v + 1 < count; ++v) {
      deg[v] = static_cast<std::size_t>(sampler(rng));
      sum += deg[v];
      // Every remaining vertex adds at least 1.
      if (sum + (count - v - 1) > total) {
        overflow = true;
        break;
      }
    }
    if (overflow) continue;
    deg[count - 1] = total - sum;
    if (rng.uniform() * pmf_max < trunc_pmf(params, static_cast<std::int64_t>(deg[count - 1]))) return deg;
  }
  const double local_clt =
      std::min(1.0, 1.0 / (pmf_max * std::sqrt(2.0 * 3.141592653589793 * params.sigma2 * static_cast<double>(count))));
  throw AttemptsExhausted("tp: degree sum never hit " + std::to_string(total) + " in " +
                              std::to_string(max_attempts) + " attempts (estimated acceptance " +
                              std::to_string(local_clt) + ")",
                          local_clt);
}

BipartiteMultigraph gen_tp(std::size_t m, std::size_t n, std::size_t t, Rng& rng, std::uint64_t max_attempts) {
  require_covering_t(m, n, t);
  const auto left_deg = conditioned_degrees(m, t, rng, max_attempts);
  const auto right_deg = conditioned_degrees(n, t, rng, max_attempts);

  std::vector<Vertex> left_stubs, right_stubs;
  left_stubs.reserve(t);
  right_stubs.reserve(t);
  for (std::size_t v = 0; v < m; ++v) left_stubs.insert(left_stubs.end(), left_deg[v], static_cast<Vertex>(v));
  for (std::size_t v = 0; v < n; ++v) right_stubs.insert(right_stubs.end(), right_deg[v], static_cast<Vertex>(v));

  // Fisher-Yates over the right stubs; left stubs stay in index order.
  for (std::size_t k = t; k > 1; --k) std::swap(right_stubs[k - 1], right_stubs[rng.below(k)]);

  std::vector<Edge> edges(t);
  for (std::size_t k = 0; k < t; ++k) edges[k] = Edge{left_stubs[k], right_stubs[k]};
  return BipartiteMultigraph(m, n, std::move(edges));
}

BipartiteMultigraph gen_er(std::size_t M, std::size_t N, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1], got " + std::to_string(p));
  std::vector<Edge> edges;
  const std::uint64_t slots = static_cast<std::uint64_t>(M) * N;
  if (p == 0.0 || slots == 0) return BipartiteMultigraph(M, N);
  if (p == 1.0) {
    edges.reserve(slots);
    for (std::size_t l = 0; l < M; ++l)
      for (std::size_t r = 0; r < N; ++r) edges.push_back({static_cast<Vertex>(l), static_cast<Vertex>(r)});
    return BipartiteMultigraph(M, N, std::move(edges));
  }
  // Geometric gaps between successes in row-major slot order.
  const double log_q = std::log1p(-p);
  std::uint64_t s = 0;
  for (;;) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_q);
    if (gap >= static_cast<double>(slots - s)) break;
    s += static_cast<std::uint64_t>(gap);
    edges.push_back({static_cast<Vertex>(s / N), static_cast<Vertex>(s % N)});
    if (++s >= slots) break;
  }
  return BipartiteMultigraph(M, N, std::move(edges));
}

ErParams er_params_for(std::size_t m, std::size_t n, std::size_t t) {
  require_covering_t(m, n, t);
  const double td = static_cast<double>(t);
  ErParams out;
  out.a = solve_parameter(td / static_cast<double>(m)).a;
  out.b = solve_parameter(td / static_cast<double>(n)).a;
  out.M = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(td / out.a)));
  out.N = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(td / out.b)));
  out.p = std::min(1.0, out.a * out.b / td);
  return out;
}

BipartiteMultigraph generate(const ModelSpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.kind) {
    case ModelKind::GR: return gen_gr(spec.m, spec.n, spec.t, rng);
    case ModelKind::GR1: return gen_gr1_rejection(spec.m, spec.n, spec.t, rng, spec.max_attempts);
    case ModelKind::TP: return gen_tp(spec.m, spec.n, spec.t, rng, spec.max_attempts);
    case ModelKind::ER: return gen_er(spec.m, spec.n, spec.p, rng);
  }
  throw InputError("unknown model kind");
}

BipartiteMultigraph generate(const ModelSpec& spec) {
  Rng rng(spec.seed);
  return generate(spec, rng);
}

}  // namespace oxford

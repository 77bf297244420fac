#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "oxford/graph.hpp"
#include "oxford/rng.hpp"

namespace oxford {

enum class ModelKind { GR, GR1, TP, ER };

std::string_view to_string(ModelKind kind);
// Accepts "gr", "gr1", "tp", "er" (case-insensitive).
ModelKind parse_model_kind(std::string_view name);

inline constexpr std::uint64_t kDefaultMaxAttempts = 1'000'000;

struct ModelSpec {
  ModelKind kind = ModelKind::GR;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t t = 0;  // GR, GR1, TP
  double p = 0.0;     // ER
  std::uint64_t seed = 0;
  std::uint64_t max_attempts = kDefaultMaxAttempts;

  // Throws InputError naming the violated precondition.
  void validate() const;
};

// t independent uniform draws from the m*n edge slots, in draw order.
BipartiteMultigraph gen_gr(std::size_t m, std::size_t n, std::size_t t, Rng& rng);

// (1 - e^{-t/m})^m (1 - e^{-t/n})^n, the large-size estimate of
// P(GR sample has no isolated vertex).
double gr1_acceptance_estimate(std::size_t m, std::size_t n, std::size_t t);

// Draws gen_gr until every vertex has degree >= 1.
BipartiteMultigraph gen_gr1_rejection(std::size_t m, std::size_t n, std::size_t t, Rng& rng,
                                      std::uint64_t max_attempts = kDefaultMaxAttempts);

// Configuration model on truncated-Poisson degrees conditioned to sum to t
// on each side. Same law as gen_gr1_rejection.
BipartiteMultigraph gen_tp(std::size_t m, std::size_t n, std::size_t t, Rng& rng,
                           std::uint64_t max_attempts = kDefaultMaxAttempts);

// count iid truncated-Poisson degrees with mean total/count, resampled as a
// whole until they sum to total. Exposed for testing the conditioning step.
std::vector<std::size_t> conditioned_degrees(std::size_t count, std::size_t total, Rng& rng,
                                             std::uint64_t max_attempts = kDefaultMaxAttempts);

// Simple bipartite graph with each of the M*N edges present independently.
BipartiteMultigraph gen_er(std::size_t M, std::size_t N, double p, Rng& rng);

struct ErParams {
  std::size_t M = 0;
  std::size_t N = 0;
  double p = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// M = t/a, N = t/b rounded to the nearest integer (minimum 1), p = ab/t.
ErParams er_params_for(std::size_t m, std::size_t n, std::size_t t);

BipartiteMultigraph generate(const ModelSpec& spec);
BipartiteMultigraph generate(const ModelSpec& spec, Rng& rng);

}  // namespace oxford

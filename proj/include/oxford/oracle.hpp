#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "oxford/graph.hpp"
#include "oxford/rng.hpp"

namespace oxford {

// Edge multiset with labels kept and slot order erased (sorted edges).
using OutcomeKey = std::vector<Edge>;
using OutcomeFrequencies = std::map<OutcomeKey, std::uint64_t>;

OutcomeKey canonical_key(const BipartiteMultigraph& g);

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

struct ExhaustiveCensus {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  std::uint64_t total_sequences = 0;  // (mn)^t
  std::uint64_t valid_count = 0;      // sequences with min degree >= 1 on both sides
  // Multiset frequencies over the valid sequences (empty unless requested).
  OutcomeFrequencies valid_outcomes;
};

// Walks all (mn)^t ordered edge sequences. Throws SizeError above `cap`.
ExhaustiveCensus enumerate_sequences(std::size_t m, std::size_t n, std::size_t t, bool record_outcomes = false,
                                     std::uint64_t cap = kEnumerationCap);

// Labelled spanning trees of K_{i,j} by checking every (i+j-1)-edge subset.
// Throws SizeError when i*j > 20.
std::uint64_t enumerate_trees(std::size_t i, std::size_t j);

OutcomeFrequencies sample_outcomes(const std::function<BipartiteMultigraph(Rng&)>& sampler, std::uint64_t samples,
                                   Rng& rng);

// Total variation distance between two frequency tables, each normalised by
// its own total.
double total_variation(const OutcomeFrequencies& p, const OutcomeFrequencies& q);

struct EquivalenceReport {
  std::size_t outcomes = 0;  // support size of the exact law
  std::uint64_t samples = 0;
  double tv = 0.0;
  double noise_floor = 0.0;  // sqrt(outcomes / samples)
  double threshold = 0.0;    // 3 * noise_floor
  bool pass = false;
};

// TP samples against the exact uniform law on valid sequences, aggregated
// to multigraphs.
EquivalenceReport lemma1_equivalence_test(std::size_t m, std::size_t n, std::size_t t, std::uint64_t samples,
                                          Rng& rng, std::uint64_t cap = kEnumerationCap);

}  // namespace oxford

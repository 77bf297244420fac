#include "oxford/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "oxford/error.hpp"
#include "oxford/generators.hpp"

namespace oxford {

OutcomeKey canonical_key(const BipartiteMultigraph& g) {
  OutcomeKey key(g.edges().begin(), g.edges().end());
  std::sort(key.begin(), key.end());
  return key;
}

namespace {

std::uint64_t capped_power(std::uint64_t base, std::size_t exponent, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

}  // namespace

ExhaustiveCensus enumerate_sequences(std::size_t m, std::size_t n, std::size_t t, bool record_outcomes,
                                     std::uint64_t cap) {
  if (m < 1 || n < 1) throw InputError("m and n must be at least 1");
  const std::uint64_t slots = static_cast<std::uint64_t>(m) * n;
  const std::uint64_t total = capped_power(slots, t, cap);
  if (total > cap)
    throw SizeError("(mn)^t exceeds enumeration cap " + std::to_string(cap) + " for m=" + std::to_string(m) +
                    ", n=" + std::to_string(n) + ", t=" + std::to_string(t));

  ExhaustiveCensus census;
  census.m = m;
  census.n = n;
  census.t = t;
  census.total_sequences = total;

  // Odometer over slot indices; degrees updated only where digits change.
  std::vector<std::uint64_t> digits(t, 0);
  std::vector<std::size_t> left(m, 0), right(n, 0);
  left[0] = t;
  right[0] = t;
  std::size_t empty_left = t > 0 ? m - 1 : m;
  std::size_t empty_right = t > 0 ? n - 1 : n;

  const auto move_slot = [&](std::uint64_t from, std::uint64_t to) {
    const auto fl = from / n, fr = from % n, tl = to / n, tr = to % n;
    empty_left += --left[fl] == 0;
    empty_right += --right[fr] == 0;
    empty_left -= left[tl]++ == 0;
    empty_right -= right[tr]++ == 0;
  };

  for (std::uint64_t seq = 0; seq < total; ++seq) {
    if (empty_left == 0 && empty_right == 0) {
      ++census.valid_count;
      if (record_outcomes) {
        OutcomeKey key(t);
        for (std::size_t k = 0; k < t; ++k)
          key[k] = Edge{static_cast<Vertex>(digits[k] / n), static_cast<Vertex>(digits[k] % n)};
        std::sort(key.begin(), key.end());
        ++census.valid_outcomes[key];
      }
    }
    for (std::size_t pos = 0; pos < t; ++pos) {
      const auto old = digits[pos];
      const auto next = old + 1 == slots ? 0 : old + 1;
      digits[pos] = next;
      move_slot(old, next);
      if (next != 0) break;
    }
  }
  return census;
}

std::uint64_t enumerate_trees(std::size_t i, std::size_t j) {
  if (i < 1 || j < 1) throw InputError("tree sizes must be at least 1");
  if (i * j > 20) throw SizeError("enumerate_trees limited to i*j <= 20");
  const std::size_t edge_count = i * j;
  const std::size_t tree_edges = i + j - 1;
  if (tree_edges > edge_count) return 0;

  std::uint64_t count = 0;
  const std::uint64_t limit = std::uint64_t{1} << edge_count;
  // Gosper's hack: all masks with exactly tree_edges bits.
  std::uint64_t mask = (std::uint64_t{1} << tree_edges) - 1;
  while (mask < limit) {
    UnionFind uf(i + j);
    bool acyclic = true;
    for (std::size_t e = 0; e < edge_count && acyclic; ++e) {
      if (mask & (std::uint64_t{1} << e)) acyclic = uf.unite(e / j, i + e % j);
    }
    count += acyclic;  // i+j-1 edges without a cycle span all i+j vertices
    if (mask == 0) break;
    const std::uint64_t low = mask & -mask;
    const std::uint64_t ripple = mask + low;
    mask = ripple | (((mask ^ ripple) >> 2) / low);
  }
  return count;
}

OutcomeFrequencies sample_outcomes(const std::function<BipartiteMultigraph(Rng&)>& sampler, std::uint64_t samples,
                                   Rng& rng) {
  OutcomeFrequencies freq;
  for (std::uint64_t s = 0; s < samples; ++s) ++freq[canonical_key(sampler(rng))];
  return freq;
}

double total_variation(const OutcomeFrequencies& p, const OutcomeFrequencies& q) {
  double p_total = 0.0, q_total = 0.0;
  for (const auto& [key, c] : p) p_total += static_cast<double>(c);
  for (const auto& [key, c] : q) q_total += static_cast<double>(c);
  if (p_total == 0.0 || q_total == 0.0) throw InputError("total variation of an empty distribution");

  std::set<OutcomeKey> keys;
  for (const auto& [key, c] : p) keys.insert(key);
  for (const auto& [key, c] : q) keys.insert(key);
  double sum = 0.0;
  for (const auto& key : keys) {
    const auto pi = p.find(key);
    const auto qi = q.find(key);
    const double pv = pi == p.end() ? 0.0 : static_cast<double>(pi->second) / p_total;
    const double qv = qi == q.end() ? 0.0 : static_cast<double>(qi->second) / q_total;
    sum += std::abs(pv - qv);
  }
  return 0.5 * sum;
}

EquivalenceReport lemma1_equivalence_test(std::size_t m, std::size_t n, std::size_t t, std::uint64_t samples,
                                          Rng& rng, std::uint64_t cap) {
  if (samples < 1) throw InputError("samples must be at least 1");
  const auto exact = enumerate_sequences(m, n, t, true, cap);
  if (exact.valid_count == 0) throw InputError("no valid outcome: t < max(m, n)");
  const auto empirical =
      sample_outcomes([&](Rng& r) { return gen_tp(m, n, t, r); }, samples, rng);

  EquivalenceReport report;
  report.outcomes = exact.valid_outcomes.size();
  report.samples = samples;
  report.tv = total_variation(empirical, exact.valid_outcomes);
  report.noise_floor = std::sqrt(static_cast<double>(report.outcomes) / static_cast<double>(samples));
  report.threshold = 3.0 * report.noise_floor;
  report.pass = report.tv <= report.threshold;
  return report;
}

}  // namespace oxford

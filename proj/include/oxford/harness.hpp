#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "oxford/generators.hpp"
#include "oxford/ingest.hpp"
#include "oxford/oracle.hpp"
#include "oxford/rng.hpp"
#include "oxford/theory.hpp"

namespace oxford {

// Runs body(index) for index in [0, count) on up to `threads` workers
// (0 = hardware concurrency). Results must be written by index so the
// outcome does not depend on scheduling. The first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < count;) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

// Sample mean and standard error (n - 1 denominator; se = 0 when n < 2).
Estimate estimate_mean(std::span<const double> values);
// Proportion with binomial standard error sqrt(p(1-p)/n).
Estimate estimate_proportion(std::size_t successes, std::size_t trials);

struct RunOptions {
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  ModelKind model = ModelKind::TP;
};

struct GridPoint {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  double c = std::numeric_limits<double>::quiet_NaN();  // set for connectivity sweeps
};

// Seed of the point'th grid point, and of a replicate within it.
std::uint64_t point_seed(std::uint64_t master, std::size_t point);
std::uint64_t replicate_seed(std::uint64_t master, std::size_t point, std::size_t replicate);

// Observables of one simulated graph.
struct ReplicateRecord {
  std::size_t point = 0;
  std::size_t replicate = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_seed = 0;
  std::size_t m = 0, n = 0, t = 0;
  std::size_t largest_left = 0;
  std::size_t largest_right = 0;
  std::size_t largest_size = 0;
  std::size_t second_largest_size = 0;
  std::size_t component_count = 0;
  bool connected = false;
  bool simple = false;  // no parallel edge
  std::size_t a11 = 0, a21 = 0, a12 = 0;
  double left_frac = 0.0;   // largest_left / m
  double right_frac = 0.0;  // largest_right / n
};

ReplicateRecord observe(const BipartiteMultigraph& g);

// The spec that regenerates a record's graph bit-exactly.
ModelSpec replicate_spec(const GridPoint& point, ModelKind model, std::uint64_t seed);

std::vector<ReplicateRecord> run_replicates(std::span<const GridPoint> grid, const RunOptions& options);

struct SweepRow {
  GridPoint point;
  std::uint64_t master_seed = 0;
  std::size_t reps = 0;
  // Analytic predictions; NaN when t/m or t/n is not above 1.
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  double ab = std::numeric_limits<double>::quiet_NaN();
  double giant_left_pred = std::numeric_limits<double>::quiet_NaN();
  double giant_right_pred = std::numeric_limits<double>::quiet_NaN();
  double c = std::numeric_limits<double>::quiet_NaN();
  double ea11 = std::numeric_limits<double>::quiet_NaN();
  double ea21 = std::numeric_limits<double>::quiet_NaN();
  double ea12 = std::numeric_limits<double>::quiet_NaN();
  // Aggregated observables.
  Estimate left_frac, right_frac;
  Estimate largest_size, second_largest_size;
  std::size_t max_largest_size = 0;
  std::size_t max_second_largest_size = 0;
  Estimate connected;
  Estimate simple;
  Estimate a11, a21, a12;
};

// Groups records by grid point; recomputes everything from the records.
std::vector<SweepRow> aggregate(std::span<const GridPoint> grid, std::span<const ReplicateRecord> records,
                                std::uint64_t master_seed);

std::vector<SweepRow> sweep_giant(std::span<const GridPoint> grid, const RunOptions& options,
                                  std::vector<ReplicateRecord>* raw = nullptr);

// One grid point per c with t = round(c mn ln(m+n) / (m+n)); every t must
// be at least max(m, n).
std::vector<GridPoint> connectivity_grid(std::size_t m, std::size_t n, std::span<const double> c_grid);
std::vector<SweepRow> sweep_connectivity(std::size_t m, std::size_t n, std::span<const double> c_grid,
                                         const RunOptions& options, std::vector<ReplicateRecord>* raw = nullptr);

struct CountRatioRow {
  std::size_t m = 0, n = 0, t = 0;
  double log_exact = 0.0;
  double log_asymptotic = 0.0;
  double ratio = 0.0;  // exact / asymptotic
  double birthday = 0.0;
  Bracket bracket{0.0, 1.0};
  std::size_t mc_samples = 0;
  std::uint64_t seed = 0;
  Estimate p_distinct;            // P(no parallel edge | min degree >= 1)
  bool within_bracket = true;     // up to 2 SE
};

std::vector<CountRatioRow> sweep_count_ratio(std::span<const GridPoint> grid, std::size_t mc_samples,
                                             const RunOptions& options);

// Fraction of GR samples whose t draws are all distinct.
Estimate birthday_experiment(std::size_t m, std::size_t n, std::size_t t, const RunOptions& options);

struct TreeComparison {
  std::size_t i = 0, j = 0;
  double analytic = 0.0;
  std::optional<double> published;
  double relative_error = std::numeric_limits<double>::quiet_NaN();  // |analytic - published| / published
  bool reproduces = false;                                            // relative_error <= 3%
  std::optional<std::size_t> observed;
  bool observed_from_edges = false;
  double tail_probability = std::numeric_limits<double>::quiet_NaN();
  Estimate simulated;
};

struct Table1Row {
  std::string name;
  int example = 0;
  std::size_t m = 0, n = 0, t = 0;
  double a = 0.0, b = 0.0, ab = 0.0;
  std::optional<double> published_ab;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::vector<TreeComparison> trees;  // (1,1), (2,1), (1,2)
  std::vector<std::string> flags;
};

inline constexpr double kTable1Tolerance = 0.03;

// Analytic EA_{i,j}, observed counts and a TP simulation per dataset.
// reps == 0 skips the simulation.
std::vector<Table1Row> run_table1(std::span<const Dataset> datasets, const RunOptions& options);

// Tail probability of an observed count under Poisson(mean): P(X >= k)
// when k is at or above the mean, P(X <= k) below it.
double observed_tail_probability(double mean, std::size_t observed);

// Reports.
nlohmann::json to_json(const PredictionReport& r);
nlohmann::json census_json(const Dataset& d, std::size_t max_tree);
nlohmann::json to_json(const std::vector<Table1Row>& rows);
nlohmann::json to_json(const std::vector<SweepRow>& rows);
nlohmann::json to_json(const std::vector<CountRatioRow>& rows);

std::string replicates_csv(std::span<const ReplicateRecord> records);
std::string sweep_csv(std::span<const SweepRow> rows);
std::string count_ratio_csv(std::span<const CountRatioRow> rows);

enum class ExperimentKind { Giant, Connectivity, CountRatio };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Giant;
  std::vector<GridPoint> grid;
  std::vector<double> c_grid;  // connectivity
  std::size_t mc_samples = 0;  // count-ratio
  RunOptions options;
};

// Grid entries are {"m","n","t"} or {"m","n","ab"} (t solved from ab);
// connectivity uses "m", "n" and a "c" array.
ExperimentConfig parse_experiment_config(const nlohmann::json& j, ExperimentKind kind);

// Oracle campaigns.

struct CountCheck {
  std::size_t m = 0, n = 0, t = 0;
  std::uint64_t enumerated = 0;
  BigInt exact;
  bool agree = false;
};

// Every (m, n, t) with t >= max(m, n) and (mn)^t <= cap (t <= 30 when
// m = n = 1), plus a handful with t < max(m, n) whose count is zero.
std::vector<std::array<std::size_t, 3>> count_oracle_instances(std::uint64_t cap = kEnumerationCap);
std::vector<CountCheck> verify_counts(std::uint64_t cap = kEnumerationCap, std::size_t threads = 0);

struct TreeCheck {
  std::size_t i = 0, j = 0;
  std::uint64_t enumerated = 0;
  BigInt formula;
  bool agree = false;
};

// Labelled spanning trees of K_{i,j}: formula against enumeration, i*j <= 20.
std::vector<TreeCheck> verify_tree_formula();

struct Lemma1Check {
  std::size_t m = 0, n = 0, t = 0;
  std::uint64_t seed = 0;
  EquivalenceReport report;
};

inline constexpr std::array<std::array<std::size_t, 3>, 3> kLemma1Instances{{{2, 2, 2}, {2, 2, 3}, {2, 3, 4}}};

std::vector<Lemma1Check> verify_lemma1(std::uint64_t samples, std::uint64_t seed);

}  // namespace oxford

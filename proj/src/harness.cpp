#include "oxford/harness.hpp"

#include <charconv>
#include <map>
#include <numeric>

#include "oxford/error.hpp"

namespace oxford {

using nlohmann::json;

Estimate estimate_mean(std::span<const double> values) {
  Estimate e;
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  e.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return e;
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.se = std::sqrt(ss / (n - 1.0) / n);
  return e;
}

Estimate estimate_proportion(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {};
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

std::uint64_t point_seed(std::uint64_t master, std::size_t point) { return derive_seed(master, point); }

std::uint64_t replicate_seed(std::uint64_t master, std::size_t point, std::size_t replicate) {
  return derive_seed(point_seed(master, point), replicate);
}

ReplicateRecord observe(const BipartiteMultigraph& g) {
  const auto summary = components(g);
  const auto census = tree_census(summary, 2, 2);
  ReplicateRecord r;
  r.m = g.m();
  r.n = g.n();
  r.t = g.t();
  if (const auto* big = summary.largest()) {
    r.largest_left = big->left;
    r.largest_right = big->right;
  }
  r.largest_size = summary.largest_size;
  r.second_largest_size = summary.second_largest_size;
  r.component_count = summary.components.size();
  r.connected = is_connected(summary);
  r.simple = !g.has_parallel_edges();
  r.a11 = census.at(1, 1);
  r.a21 = census.at(2, 1);
  r.a12 = census.at(1, 2);
  r.left_frac = g.m() ? static_cast<double>(r.largest_left) / static_cast<double>(g.m()) : 0.0;
  r.right_frac = g.n() ? static_cast<double>(r.largest_right) / static_cast<double>(g.n()) : 0.0;
  return r;
}

ModelSpec replicate_spec(const GridPoint& point, ModelKind model, std::uint64_t seed) {
  ModelSpec spec;
  spec.kind = model;
  spec.m = point.m;
  spec.n = point.n;
  spec.t = point.t;
  spec.seed = seed;
  return spec;
}

std::vector<ReplicateRecord> run_replicates(std::span<const GridPoint> grid, const RunOptions& options) {
  if (options.reps < 1) throw InputError("replicate count must be at least 1");
  if (grid.empty()) throw InputError("experiment grid is empty");
  if (options.model == ModelKind::ER) throw InputError("sweeps run the gr, gr1 or tp models");
  std::vector<ReplicateRecord> records(grid.size() * options.reps);
  parallel_for(records.size(), options.threads, [&](std::size_t k) {
    const auto point = k / options.reps;
    const auto rep = k % options.reps;
    const auto seed = replicate_seed(options.seed, point, rep);
    auto record = observe(generate(replicate_spec(grid[point], options.model, seed)));
    record.point = point;
    record.replicate = rep;
    record.master_seed = options.seed;
    record.replicate_seed = seed;
    records[k] = record;
  });
  return records;
}

std::vector<SweepRow> aggregate(std::span<const GridPoint> grid, std::span<const ReplicateRecord> records,
                                std::uint64_t master_seed) {
  std::vector<std::vector<const ReplicateRecord*>> by_point(grid.size());
  for (const auto& r : records) {
    if (r.point >= grid.size()) throw InputError("record refers to a grid point outside the grid");
    by_point[r.point].push_back(&r);
  }
  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto& pt = grid[p];
    const auto& recs = by_point[p];
    SweepRow row;
    row.point = pt;
    row.master_seed = master_seed;
    row.reps = recs.size();
    if (pt.t > pt.m && pt.t > pt.n) {
      row.a = solve_parameter(static_cast<double>(pt.t) / static_cast<double>(pt.m)).a;
      row.b = solve_parameter(static_cast<double>(pt.t) / static_cast<double>(pt.n)).a;
      row.ab = row.a * row.b;
      const auto ext = extinction(row.a, row.b);
      row.giant_left_pred = 1.0 - ext.xi_L;
      row.giant_right_pred = 1.0 - ext.xi_R;
      const double t = static_cast<double>(pt.t);
      row.ea11 = expected_trees_at(1, 1, row.a, row.b, t);
      row.ea21 = expected_trees_at(2, 1, row.a, row.b, t);
      row.ea12 = expected_trees_at(1, 2, row.a, row.b, t);
    }
    if (pt.m + pt.n >= 2) row.c = connectivity_c(pt.m, pt.n, pt.t);

    const auto collect = [&](auto field) {
      std::vector<double> v;
      v.reserve(recs.size());
      for (const auto* r : recs) v.push_back(static_cast<double>(field(*r)));
      return estimate_mean(v);
    };
    row.left_frac = collect([](const ReplicateRecord& r) { return r.left_frac; });
    row.right_frac = collect([](const ReplicateRecord& r) { return r.right_frac; });
    row.largest_size = collect([](const ReplicateRecord& r) { return r.largest_size; });
    row.second_largest_size = collect([](const ReplicateRecord& r) { return r.second_largest_size; });
    row.a11 = collect([](const ReplicateRecord& r) { return r.a11; });
    row.a21 = collect([](const ReplicateRecord& r) { return r.a21; });
    row.a12 = collect([](const ReplicateRecord& r) { return r.a12; });
    std::size_t connected = 0, simple = 0;
    for (const auto* r : recs) {
      connected += r->connected;
      simple += r->simple;
      row.max_largest_size = std::max(row.max_largest_size, r->largest_size);
      row.max_second_largest_size = std::max(row.max_second_largest_size, r->second_largest_size);
    }
    row.connected = estimate_proportion(connected, recs.size());
    row.simple = estimate_proportion(simple, recs.size());
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> sweep_giant(std::span<const GridPoint> grid, const RunOptions& options,
                                  std::vector<ReplicateRecord>* raw) {
  auto records = run_replicates(grid, options);
  auto rows = aggregate(grid, records, options.seed);
  if (raw) *raw = std::move(records);
  return rows;
}

std::vector<GridPoint> connectivity_grid(std::size_t m, std::size_t n, std::span<const double> c_grid) {
  if (c_grid.empty()) throw InputError("connectivity grid of c values is empty");
  std::vector<GridPoint> grid;
  for (double c : c_grid) {
    if (!(c > 0.0)) throw InputError("connectivity parameter c must be positive");
    GridPoint p{m, n, t_for_connectivity(m, n, c), c};
    if (p.t < std::max(m, n))
      throw InputError("c = " + std::to_string(c) + " gives t = " + std::to_string(p.t) + " < max(m, n)");
    grid.push_back(p);
  }
  return grid;
}

std::vector<SweepRow> sweep_connectivity(std::size_t m, std::size_t n, std::span<const double> c_grid,
                                         const RunOptions& options, std::vector<ReplicateRecord>* raw) {
  const auto grid = connectivity_grid(m, n, c_grid);
  return sweep_giant(grid, options, raw);
}

std::vector<CountRatioRow> sweep_count_ratio(std::span<const GridPoint> grid, std::size_t mc_samples,
                                             const RunOptions& options) {
  if (grid.empty()) throw InputError("experiment grid is empty");
  std::vector<CountRatioRow> rows;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto& pt = grid[p];
    CountRatioRow row;
    row.m = pt.m;
    row.n = pt.n;
    row.t = pt.t;
    row.log_exact = count_exact_log(pt.m, pt.n, pt.t);
    row.log_asymptotic = count_asymptotic_log(pt.m, pt.n, pt.t);
    row.ratio = std::exp(row.log_exact - row.log_asymptotic);
    row.birthday = birthday_factor(pt.m, pt.n, pt.t);
    row.bracket = corollary1_bracket(pt.m, pt.n, pt.t);
    row.mc_samples = mc_samples;
    row.seed = point_seed(options.seed, p);
    if (mc_samples > 0) {
      std::vector<char> simple(mc_samples);
      parallel_for(mc_samples, options.threads, [&](std::size_t k) {
        auto spec = replicate_spec(pt, options.model, replicate_seed(options.seed, p, k));
        simple[k] = !generate(spec).has_parallel_edges();
      });
      const auto hits = static_cast<std::size_t>(std::count(simple.begin(), simple.end(), 1));
      row.p_distinct = estimate_proportion(hits, mc_samples);
      row.within_bracket = row.p_distinct.mean + 2.0 * row.p_distinct.se >= row.bracket.lo &&
                           row.p_distinct.mean - 2.0 * row.p_distinct.se <= row.bracket.hi;
    }
    rows.push_back(row);
  }
  return rows;
}

Estimate birthday_experiment(std::size_t m, std::size_t n, std::size_t t, const RunOptions& options) {
  if (options.reps < 1) throw InputError("replicate count must be at least 1");
  std::vector<char> distinct(options.reps);
  const GridPoint pt{m, n, t};
  parallel_for(options.reps, options.threads, [&](std::size_t k) {
    auto spec = replicate_spec(pt, ModelKind::GR, replicate_seed(options.seed, 0, k));
    distinct[k] = !generate(spec).has_parallel_edges();
  });
  return estimate_proportion(static_cast<std::size_t>(std::count(distinct.begin(), distinct.end(), 1)),
                             options.reps);
}

double observed_tail_probability(double mean, std::size_t observed) {
  const auto k = static_cast<std::int64_t>(observed);
  if (static_cast<double>(observed) >= mean) return poisson_tail(mean, k, PoissonTail::AtLeast);
  return 1.0 - poisson_tail(mean, k + 1, PoissonTail::AtLeast);
}

std::vector<Table1Row> run_table1(std::span<const Dataset> datasets, const RunOptions& options) {
  static constexpr std::pair<std::size_t, std::size_t> kSizes[] = {{1, 1}, {2, 1}, {1, 2}};
  std::vector<Table1Row> rows;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const auto& ds = datasets[d];
    if (!ds.published) throw InputError("dataset " + ds.name + " has no published summary");
    const auto& pub = *ds.published;
    Table1Row row;
    row.name = ds.name;
    row.example = pub.table1_example;
    row.m = pub.m;
    row.n = pub.n;
    row.t = pub.t;
    row.a = solve_parameter(static_cast<double>(pub.t) / static_cast<double>(pub.m)).a;
    row.b = solve_parameter(static_cast<double>(pub.t) / static_cast<double>(pub.n)).a;
    row.ab = row.a * row.b;
    row.published_ab = pub.table1_ab;
    row.seed = point_seed(options.seed, d);
    row.reps = options.reps;

    std::optional<TreeCensus> census;
    if (has_edges(ds)) census = tree_census(components(ds.graph), 2, 2);

    std::vector<ReplicateRecord> sims;
    if (options.reps > 0) {
      RunOptions opts = options;
      const GridPoint pt{pub.m, pub.n, pub.t};
      sims = run_replicates(std::span(&pt, 1), [&] {
        RunOptions o = opts;
        o.seed = row.seed;
        return o;
      }());
    }

    for (const auto& [i, j] : kSizes) {
      TreeComparison cmp;
      cmp.i = i;
      cmp.j = j;
      cmp.analytic = expected_trees_at(i, j, row.a, row.b, static_cast<double>(pub.t));
      if (const auto it = pub.expected_trees.find({i, j}); it != pub.expected_trees.end()) {
        cmp.published = it->second;
        cmp.relative_error = std::abs(cmp.analytic - it->second) / it->second;
        cmp.reproduces = cmp.relative_error <= kTable1Tolerance;
      }
      if (census) {
        cmp.observed = census->at(i, j);
        cmp.observed_from_edges = true;
      } else if (const auto it = pub.observed_trees.find({i, j}); it != pub.observed_trees.end()) {
        cmp.observed = it->second;
      }
      if (cmp.observed) cmp.tail_probability = observed_tail_probability(cmp.analytic, *cmp.observed);
      if (!sims.empty()) {
        std::vector<double> v;
        for (const auto& r : sims) v.push_back(static_cast<double>(i == 1 && j == 1 ? r.a11 : i == 2 ? r.a21 : r.a12));
        cmp.simulated = estimate_mean(v);
      }
      if (cmp.published && !cmp.reproduces) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "EA_{%zu,%zu}: recomputed %.3f vs published %.2f (relative error %.0f%%)", i,
                      j, cmp.analytic, *cmp.published, 100.0 * cmp.relative_error);
        row.flags.emplace_back(buf);
        if (cmp.observed) {
          std::snprintf(buf, sizeof buf,
                        "A_{%zu,%zu} = %zu: tail probability %.3f at the published mean, %.3f at the recomputed mean",
                        i, j, *cmp.observed, observed_tail_probability(*cmp.published, *cmp.observed),
                        cmp.tail_probability);
          row.flags.emplace_back(buf);
        }
      }
      row.trees.push_back(cmp);
    }
    for (const auto& msg : fixture_discrepancies(ds)) row.flags.push_back("fixture " + msg);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json estimate_json(const Estimate& e) { return {{"mean", number_or_null(e.mean)}, {"se", number_or_null(e.se)}}; }

std::string tree_key(std::size_t i, std::size_t j) { return std::to_string(i) + "," + std::to_string(j); }

std::string fmt_double(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

json to_json(const PredictionReport& r) {
  json ea = json::object();
  json matrix = json::array();
  for (std::size_t i = 1; i <= r.max_tree; ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= r.max_tree; ++j) {
      ea[tree_key(i, j)] = r.ea[i - 1][j - 1];
      row.push_back(r.ea[i - 1][j - 1]);
    }
    matrix.push_back(row);
  }
  json out = {
      {"m", r.m},
      {"n", r.n},
      {"t", r.t},
      {"a", r.a.a},
      {"b", r.b.a},
      {"sigma2_a", r.a.sigma2},
      {"sigma2_b", r.b.sigma2},
      {"ab", r.ab},
      {"supercritical", r.ab > 1.0},
      {"zeta_L", r.extinction.zeta_L},
      {"zeta_R", r.extinction.zeta_R},
      {"xi_L", r.extinction.xi_L},
      {"xi_R", r.extinction.xi_R},
      {"fixed_point_residual", r.extinction.residual},
      {"giant_left_frac", r.giant_left_frac},
      {"giant_right_frac", r.giant_right_frac},
      {"c", r.c},
      {"expected_trees", ea},
      {"ea_matrix", matrix},
      {"log_count_exact", r.log_count_exact ? json(*r.log_count_exact) : json(nullptr)},
      {"log_count_asymptotic", r.log_count_asymptotic},
      {"count_ratio", r.log_count_exact ? json(std::exp(*r.log_count_exact - r.log_count_asymptotic)) : json(nullptr)},
      {"birthday_factor", r.birthday},
      {"corollary1_bracket", {r.corollary1.lo, r.corollary1.hi}},
  };
  return out;
}

json census_json(const Dataset& d, std::size_t max_tree) {
  const auto summary = components(d.graph);
  const auto census = tree_census(summary, max_tree, max_tree);
  json comps = json::array();
  for (const auto& c : summary.components)
    comps.push_back({{"left", c.left}, {"right", c.right}, {"edges", c.edges}, {"is_tree", c.is_tree}});
  json trees = json::object();
  json matrix = json::array();
  for (std::size_t i = 1; i <= max_tree; ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= max_tree; ++j) {
      trees[tree_key(i, j)] = census.at(i, j);
      row.push_back(census.at(i, j));
    }
    matrix.push_back(row);
  }
  const auto mind = min_degree(d.graph);
  return {
      {"name", d.name},
      {"m", d.graph.m()},
      {"n", d.graph.n()},
      {"t", d.graph.t()},
      {"connected", is_connected(summary)},
      {"component_count", summary.components.size()},
      {"largest_size", summary.largest_size},
      {"second_largest_size", summary.second_largest_size},
      {"isolated_left", summary.isolated_left},
      {"isolated_right", summary.isolated_right},
      {"components", comps},
      {"tree_counts", trees},
      {"tree_matrix", matrix},
      {"min_degree", {{"left", mind.left}, {"right", mind.right}}},
      {"max_degree", max_degree(d.graph)},
      {"warnings", d.warnings},
  };
}

json to_json(const std::vector<Table1Row>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json trees = json::array();
    for (const auto& c : r.trees) {
      trees.push_back({
          {"i", c.i},
          {"j", c.j},
          {"analytic", c.analytic},
          {"published", c.published ? json(*c.published) : json(nullptr)},
          {"relative_error", number_or_null(c.relative_error)},
          {"reproduces", c.reproduces},
          {"observed", c.observed ? json(*c.observed) : json(nullptr)},
          {"observed_from_edges", c.observed_from_edges},
          {"tail_probability", number_or_null(c.tail_probability)},
          {"simulated", estimate_json(c.simulated)},
      });
    }
    out.push_back({
        {"name", r.name},
        {"example", r.example},
        {"m", r.m},
        {"n", r.n},
        {"t", r.t},
        {"a", r.a},
        {"b", r.b},
        {"ab", r.ab},
        {"published_ab", r.published_ab ? json(*r.published_ab) : json(nullptr)},
        {"seed", r.seed},
        {"reps", r.reps},
        {"trees", trees},
        {"flags", r.flags},
    });
  }
  return out;
}

json to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({
        {"m", r.point.m},
        {"n", r.point.n},
        {"t", r.point.t},
        {"c", number_or_null(r.c)},
        {"master_seed", r.master_seed},
        {"reps", r.reps},
        {"a", number_or_null(r.a)},
        {"b", number_or_null(r.b)},
        {"ab", number_or_null(r.ab)},
        {"giant_left_pred", number_or_null(r.giant_left_pred)},
        {"giant_right_pred", number_or_null(r.giant_right_pred)},
        {"ea11", number_or_null(r.ea11)},
        {"left_frac", estimate_json(r.left_frac)},
        {"right_frac", estimate_json(r.right_frac)},
        {"largest_size", estimate_json(r.largest_size)},
        {"second_largest_size", estimate_json(r.second_largest_size)},
        {"max_largest_size", r.max_largest_size},
        {"max_second_largest_size", r.max_second_largest_size},
        {"connected", estimate_json(r.connected)},
        {"a11", estimate_json(r.a11)},
        {"a21", estimate_json(r.a21)},
        {"a12", estimate_json(r.a12)},
    });
  }
  return out;
}

json to_json(const std::vector<CountRatioRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({
        {"m", r.m},
        {"n", r.n},
        {"t", r.t},
        {"log_exact", r.log_exact},
        {"log_asymptotic", r.log_asymptotic},
        {"ratio", r.ratio},
        {"birthday_factor", r.birthday},
        {"bracket", {r.bracket.lo, r.bracket.hi}},
        {"mc_samples", r.mc_samples},
        {"seed", r.seed},
        {"p_distinct", estimate_json(r.p_distinct)},
        {"within_bracket", r.within_bracket},
    });
  }
  return out;
}

std::string replicates_csv(std::span<const ReplicateRecord> records) {
  std::string out =
      "point,replicate,master_seed,replicate_seed,m,n,t,largest_left,largest_right,largest_size,"
      "second_largest_size,component_count,connected,simple,a11,a21,a12,left_frac,right_frac\n";
  for (const auto& r : records) {
    out += std::to_string(r.point) + ',' + std::to_string(r.replicate) + ',' + std::to_string(r.master_seed) + ',' +
           std::to_string(r.replicate_seed) + ',' + std::to_string(r.m) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.t) + ',' + std::to_string(r.largest_left) + ',' + std::to_string(r.largest_right) + ',' +
           std::to_string(r.largest_size) + ',' + std::to_string(r.second_largest_size) + ',' +
           std::to_string(r.component_count) + ',' + (r.connected ? "1" : "0") + ',' + (r.simple ? "1" : "0") + ',' +
           std::to_string(r.a11) + ',' + std::to_string(r.a21) + ',' + std::to_string(r.a12) + ',' +
           fmt_double(r.left_frac) + ',' + fmt_double(r.right_frac) + '\n';
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out =
      "m,n,t,c,master_seed,reps,a,b,ab,giant_left_pred,giant_right_pred,ea11,ea21,ea12,"
      "left_frac_mean,left_frac_se,right_frac_mean,right_frac_se,largest_mean,largest_se,largest_max,"
      "second_mean,second_se,second_max,connected_mean,connected_se,a11_mean,a11_se,a21_mean,a21_se,"
      "a12_mean,a12_se\n";
  for (const auto& r : rows) {
    const std::string cols[] = {
        std::to_string(r.point.m),        std::to_string(r.point.n),        std::to_string(r.point.t),
        fmt_double(r.c),                  std::to_string(r.master_seed),    std::to_string(r.reps),
        fmt_double(r.a),                  fmt_double(r.b),                  fmt_double(r.ab),
        fmt_double(r.giant_left_pred),    fmt_double(r.giant_right_pred),   fmt_double(r.ea11),
        fmt_double(r.ea21),               fmt_double(r.ea12),               fmt_double(r.left_frac.mean),
        fmt_double(r.left_frac.se),       fmt_double(r.right_frac.mean),    fmt_double(r.right_frac.se),
        fmt_double(r.largest_size.mean),  fmt_double(r.largest_size.se),    std::to_string(r.max_largest_size),
        fmt_double(r.second_largest_size.mean), fmt_double(r.second_largest_size.se),
        std::to_string(r.max_second_largest_size), fmt_double(r.connected.mean), fmt_double(r.connected.se),
        fmt_double(r.a11.mean),           fmt_double(r.a11.se),             fmt_double(r.a21.mean),
        fmt_double(r.a21.se),             fmt_double(r.a12.mean),           fmt_double(r.a12.se)};
    for (std::size_t k = 0; k < std::size(cols); ++k) {
      if (k) out += ',';
      out += cols[k];
    }
    out += '\n';
  }
  return out;
}

std::string count_ratio_csv(std::span<const CountRatioRow> rows) {
  std::string out =
      "m,n,t,log_exact,log_asymptotic,ratio,birthday_factor,bracket_lo,bracket_hi,mc_samples,seed,"
      "p_distinct_mean,p_distinct_se,within_bracket\n";
  for (const auto& r : rows) {
    out += std::to_string(r.m) + ',' + std::to_string(r.n) + ',' + std::to_string(r.t) + ',' +
           fmt_double(r.log_exact) + ',' + fmt_double(r.log_asymptotic) + ',' + fmt_double(r.ratio) + ',' +
           fmt_double(r.birthday) + ',' + fmt_double(r.bracket.lo) + ',' + fmt_double(r.bracket.hi) + ',' +
           std::to_string(r.mc_samples) + ',' + std::to_string(r.seed) + ',' + fmt_double(r.p_distinct.mean) + ',' +
           fmt_double(r.p_distinct.se) + ',' + (r.within_bracket ? "1" : "0") + '\n';
  }
  return out;
}

ExperimentConfig parse_experiment_config(const json& j, ExperimentKind kind) {
  try {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.options.reps = j.value("reps", std::size_t{100});
    cfg.options.seed = j.value("seed", std::uint64_t{1});
    cfg.options.threads = j.value("threads", std::size_t{0});
    cfg.options.model = parse_model_kind(j.value("model", std::string("tp")));
    if (cfg.options.reps < 1) throw InputError("reps must be at least 1");

    if (kind == ExperimentKind::Connectivity) {
      const auto m = j.at("m").get<std::size_t>();
      const auto n = j.at("n").get<std::size_t>();
      cfg.c_grid = j.at("c").get<std::vector<double>>();
      cfg.grid = connectivity_grid(m, n, cfg.c_grid);
      return cfg;
    }
    if (kind == ExperimentKind::CountRatio) cfg.mc_samples = j.value("mc_samples", std::size_t{0});
    const auto& grid = j.at("grid");
    if (!grid.is_array() || grid.empty()) throw InputError("config 'grid' must be a non-empty array");
    for (const auto& g : grid) {
      GridPoint p;
      p.m = g.at("m").get<std::size_t>();
      p.n = g.at("n").get<std::size_t>();
      if (g.contains("t"))
        p.t = g.at("t").get<std::size_t>();
      else if (g.contains("ab"))
        p.t = t_for_ab(p.m, p.n, g.at("ab").get<double>());
      else
        throw InputError("grid entries need 't' or 'ab'");
      cfg.grid.push_back(p);
    }
    return cfg;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad experiment config: ") + e.what());
  }
}

std::vector<std::array<std::size_t, 3>> count_oracle_instances(std::uint64_t cap) {
  const auto fits = [cap](std::size_t m, std::size_t n, std::size_t t) {
    double total = 1.0;
    for (std::size_t k = 0; k < t; ++k) total *= static_cast<double>(m * n);
    return total <= static_cast<double>(cap);
  };
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t m = 1; fits(m, 1, m); ++m) {
    for (std::size_t n = 1; fits(m, n, std::max(m, n)); ++n) {
      const std::size_t t_max = m * n == 1 ? 30 : std::numeric_limits<std::size_t>::max();
      for (std::size_t t = std::max(m, n); t <= t_max && fits(m, n, t); ++t) out.push_back({m, n, t});
    }
  }
  for (const auto& short_t : {std::array<std::size_t, 3>{2, 2, 1}, {3, 2, 2}, {2, 3, 2}, {4, 4, 3}, {5, 1, 4}})
    if (fits(short_t[0], short_t[1], short_t[2])) out.push_back(short_t);
  return out;
}

std::vector<CountCheck> verify_counts(std::uint64_t cap, std::size_t threads) {
  const auto instances = count_oracle_instances(cap);
  std::vector<CountCheck> out(instances.size());
  parallel_for(instances.size(), threads, [&](std::size_t k) {
    const auto [m, n, t] = instances[k];
    CountCheck c;
    c.m = m;
    c.n = n;
    c.t = t;
    c.enumerated = enumerate_sequences(m, n, t, false, cap).valid_count;
    c.exact = count_exact(m, n, t);
    c.agree = c.exact == c.enumerated;
    out[k] = std::move(c);
  });
  return out;
}

std::vector<TreeCheck> verify_tree_formula() {
  std::vector<TreeCheck> out;
  for (std::size_t i = 1; i <= 20; ++i) {
    for (std::size_t j = 1; i * j <= 20; ++j) {
      TreeCheck c;
      c.i = i;
      c.j = j;
      c.enumerated = enumerate_trees(i, j);
      c.formula = labeled_tree_count(i, j);
      c.agree = c.formula == c.enumerated;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Lemma1Check> verify_lemma1(std::uint64_t samples, std::uint64_t seed) {
  std::vector<Lemma1Check> out;
  for (std::size_t k = 0; k < kLemma1Instances.size(); ++k) {
    const auto [m, n, t] = kLemma1Instances[k];
    Lemma1Check c;
    c.m = m;
    c.n = n;
    c.t = t;
    c.seed = derive_seed(seed, k);
    Rng rng(c.seed);
    c.report = lemma1_equivalence_test(m, n, t, samples, rng);
    out.push_back(c);
  }
  return out;
}

}  // namespace oxford

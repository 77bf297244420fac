// oxgraph: generate, analyse and predict random bipartite (Oxford) graphs.
//
// Exit codes: 0 success, 1 domain/validation error, 2 I/O error, 3 internal.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oxford/error.hpp"
#include "oxford/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace oxford;

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Dataset generated_dataset(const BipartiteMultigraph& g) {
  Dataset d;
  d.name = "generated";
  for (std::size_t i = 0; i < g.m(); ++i) d.left_labels.push_back("L" + std::to_string(i + 1));
  for (std::size_t j = 0; j < g.n(); ++j) d.right_labels.push_back("R" + std::to_string(j + 1));
  d.graph = g;
  return d;
}

// Edge lists have exactly two comma-separated fields on every data line.
bool looks_like_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (std::count(line.begin(), line.end(), ',') != 1) return false;
    any = true;
  }
  return any;
}

Dataset load_input(const std::string& path, const std::string& format) {
  const fs::path p(path);
  if (format == "fixture" || (format == "auto" && p.extension() == ".json")) {
    auto dir = p.parent_path();
    if (dir.empty()) dir = ".";
    return load_fixture(dir, p.stem().string());
  }
  const auto text = read_file(p);
  const auto name = p.stem().string();
  if (format == "edges" || (format == "auto" && looks_like_edge_list(text))) return parse_edge_list(text, name);
  return parse_matrix(text, name);
}

std::vector<Dataset> load_fixtures(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("dataset directory '" + dir.string() + "' does not exist");
  std::vector<Dataset> out;
  for (auto name : kFixtureNames) out.push_back(load_fixture(dir, name));
  return out;
}

json verify_oracle(std::uint64_t cap, std::size_t threads, bool& ok) {
  const auto counts = verify_counts(cap, threads);
  const auto trees = verify_tree_formula();
  json failures = json::array();
  std::size_t count_ok = 0, tree_ok = 0;
  for (const auto& c : counts) {
    if (c.agree) {
      ++count_ok;
    } else {
      failures.push_back({{"m", c.m}, {"n", c.n}, {"t", c.t}, {"enumerated", c.enumerated},
                          {"formula", c.exact.str()}});
    }
  }
  for (const auto& c : trees) {
    if (c.agree) {
      ++tree_ok;
    } else {
      failures.push_back({{"i", c.i}, {"j", c.j}, {"enumerated", c.enumerated}, {"formula", c.formula.str()}});
    }
  }
  ok = ok && failures.empty();
  std::cerr << (count_ok == counts.size() ? "PASS" : "FAIL") << " count_exact vs enumeration: " << count_ok << "/"
            << counts.size() << " instances\n";
  std::cerr << (tree_ok == trees.size() ? "PASS" : "FAIL") << " tree formula vs enumeration: " << tree_ok << "/"
            << trees.size() << " (i,j)\n";
  return {{"cap", cap},
          {"count_instances", counts.size()},
          {"count_agree", count_ok},
          {"tree_instances", trees.size()},
          {"tree_agree", tree_ok},
          {"failures", failures},
          {"pass", failures.empty()}};
}

json verify_lemma1_suite(std::uint64_t samples, std::uint64_t seed, bool& ok) {
  json rows = json::array();
  for (const auto& c : verify_lemma1(samples, seed)) {
    ok = ok && c.report.pass;
    std::cerr << (c.report.pass ? "PASS" : "FAIL") << " lemma1 (" << c.m << "," << c.n << "," << c.t
              << "): tv=" << c.report.tv << " threshold=" << c.report.threshold << "\n";
    rows.push_back({{"m", c.m},
                    {"n", c.n},
                    {"t", c.t},
                    {"seed", c.seed},
                    {"outcomes", c.report.outcomes},
                    {"samples", c.report.samples},
                    {"tv", c.report.tv},
                    {"noise_floor", c.report.noise_floor},
                    {"threshold", c.report.threshold},
                    {"pass", c.report.pass}});
  }
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"Random bipartite graph models for Oxford grids"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker threads for replicates (0 = all cores)");

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "analytic predictions for (m, n, t)");
  std::size_t pm = 0, pn = 0, pt = 0, max_tree = 4;
  predict_cmd->add_option("--m", pm, "left vertices")->required();
  predict_cmd->add_option("--n", pn, "right vertices")->required();
  predict_cmd->add_option("--t", pt, "edges")->required();
  predict_cmd->add_option("--max-tree", max_tree, "largest tree side in the EA matrix")->capture_default_str();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "sample a graph as an edge-list CSV");
  std::string model, out_path;
  std::size_t gm = 0, gn = 0, gt = 0;
  double gp = 0.0;
  std::uint64_t gen_seed = 1, max_attempts = kDefaultMaxAttempts;
  gen_cmd->add_option("--model", model, "gr, gr1, tp or er")->required();
  gen_cmd->add_option("--m", gm, "left vertices")->required();
  gen_cmd->add_option("--n", gn, "right vertices")->required();
  auto* t_opt = gen_cmd->add_option("--t", gt, "edges (gr, gr1, tp)");
  auto* p_opt = gen_cmd->add_option("--p", gp, "edge probability (er)");
  t_opt->excludes(p_opt);
  gen_cmd->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--max-attempts", max_attempts, "rejection budget")->capture_default_str();
  gen_cmd->add_option("--out", out_path, "output file (default stdout)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "component and tree census of a graph file");
  std::string in_path, format = "auto";
  std::size_t analyze_max_tree = 4;
  analyze_cmd->add_option("--in", in_path, "edge list, 0/1 matrix or fixture .json")->required();
  analyze_cmd->add_option("--max-tree", analyze_max_tree, "largest tree side counted")->capture_default_str();
  analyze_cmd->add_option("--format", format, "auto, edges, matrix or fixture")
      ->check(CLI::IsMember({"auto", "edges", "matrix", "fixture"}))
      ->capture_default_str();

  // table1
  auto* table1_cmd = app.add_subcommand("table1", "reproduce the expected/observed tree table");
  std::string datasets_dir = default_datasets_dir().string();
  std::size_t table1_reps = 200;
  std::uint64_t table1_seed = 1;
  table1_cmd->add_option("--datasets", datasets_dir, "fixture directory")->capture_default_str();
  table1_cmd->add_option("--reps", table1_reps, "TP replicates per dataset (0 skips)")->capture_default_str();
  table1_cmd->add_option("--seed", table1_seed, "master seed")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweeps from a JSON config");
  std::string sweep_kind, config_path, sweep_out;
  bool aggregate_rows = false;
  sweep_cmd->add_option("kind", sweep_kind, "giant, connectivity or count-ratio")
      ->required()
      ->check(CLI::IsMember({"giant", "connectivity", "count-ratio"}));
  sweep_cmd->add_option("--config", config_path, "JSON config")->required();
  sweep_cmd->add_flag("--aggregate", aggregate_rows, "one row per grid point instead of per replicate");
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "count oracle and TP/GR1 equivalence checks");
  std::string suite = "all";
  double cap = static_cast<double>(kEnumerationCap);
  std::uint64_t samples = 1'000'000, verify_seed = 1;
  verify_cmd->add_option("--suite", suite, "oracle, lemma1 or all")
      ->check(CLI::IsMember({"oracle", "lemma1", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--cap", cap, "enumeration cap on (mn)^t")->capture_default_str();
  verify_cmd->add_option("--samples", samples, "TP samples per equivalence instance")->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "master seed for the equivalence check")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*predict_cmd) {
    write_output(dump(to_json(predict(pm, pn, pt, max_tree))), "");
  } else if (*gen_cmd) {
    ModelSpec spec;
    spec.kind = parse_model_kind(model);
    spec.m = gm;
    spec.n = gn;
    spec.seed = gen_seed;
    spec.max_attempts = max_attempts;
    if (spec.kind == ModelKind::ER) {
      if (!*p_opt) throw InputError("--model er requires --p");
      spec.p = gp;
    } else {
      if (!*t_opt) throw InputError("--model " + model + " requires --t");
      spec.t = gt;
    }
    const auto g = generate(spec);
    std::string header = "# model=" + std::string(to_string(spec.kind)) + " m=" + std::to_string(gm) +
                         " n=" + std::to_string(gn);
    if (spec.kind == ModelKind::ER) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " p=%.17g", gp);
      header += buf;
    } else {
      header += " t=" + std::to_string(gt);
    }
    header += " seed=" + std::to_string(gen_seed) + "\n";
    write_output(header + emit_edge_list(generated_dataset(g)), out_path);
  } else if (*analyze_cmd) {
    const auto d = load_input(in_path, format);
    auto report = census_json(d, analyze_max_tree);
    if (d.published) report["fixture_discrepancies"] = fixture_discrepancies(d);
    write_output(dump(report), "");
  } else if (*table1_cmd) {
    const auto datasets = load_fixtures(datasets_dir);
    RunOptions opts;
    opts.reps = table1_reps;
    opts.seed = table1_seed;
    opts.threads = threads;
    const auto rows = run_table1(datasets, opts);
    json report = {{"seed", table1_seed}, {"reps", table1_reps}, {"tolerance", kTable1Tolerance},
                   {"rows", to_json(rows)}};
    write_output(dump(report), "");
  } else if (*sweep_cmd) {
    json j;
    try {
      j = json::parse(read_file(config_path));
    } catch (const json::parse_error& e) {
      throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    const auto kind = sweep_kind == "giant"          ? ExperimentKind::Giant
                      : sweep_kind == "connectivity" ? ExperimentKind::Connectivity
                                                     : ExperimentKind::CountRatio;
    auto cfg = parse_experiment_config(j, kind);
    if (app.get_option("--threads")->count() > 0) cfg.options.threads = threads;
    if (kind == ExperimentKind::CountRatio) {
      write_output(count_ratio_csv(sweep_count_ratio(cfg.grid, cfg.mc_samples, cfg.options)), sweep_out);
    } else {
      std::vector<ReplicateRecord> raw;
      const auto rows = sweep_giant(cfg.grid, cfg.options, &raw);
      write_output(aggregate_rows ? sweep_csv(rows) : replicates_csv(raw), sweep_out);
    }
  } else if (*verify_cmd) {
    if (!(cap >= 1.0) || cap > 1e12) throw InputError("--cap must lie in [1, 1e12]");
    bool ok = true;
    json report = json::object();
    if (suite == "oracle" || suite == "all")
      report["oracle"] = verify_oracle(static_cast<std::uint64_t>(cap), threads, ok);
    if (suite == "lemma1" || suite == "all") {
      report["lemma1"] = verify_lemma1_suite(samples, verify_seed, ok);
      report["seed"] = verify_seed;
    }
    report["pass"] = ok;
    write_output(dump(report), "");
    return ok ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

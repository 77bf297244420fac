#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oxford/graph.hpp"

namespace oxford {

// Summary statistics transcribed alongside a fixture.
struct PublishedSummary {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  std::optional<double> a, b, ab;                 // published parameters
  std::optional<double> text_a, text_b, text_ab;  // body text, when it differs
  int table1_example = 0;
  std::optional<double> table1_ab;
  // Keyed by (i, j).
  std::map<std::pair<std::size_t, std::size_t>, double> expected_trees;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> observed_trees;
  std::map<std::size_t, std::size_t> component_sizes;  // size -> count, when described
  std::vector<std::string> known_discrepancies;        // fields allowed to disagree with the edges
  std::vector<std::string> notes;
};

struct Dataset {
  std::string name;
  std::vector<std::string> left_labels;
  std::vector<std::string> right_labels;
  BipartiteMultigraph graph;
  std::vector<std::string> warnings;
  std::optional<PublishedSummary> published;
};

// `left,right` per line; optional `left,right` header; `#` comment lines;
// LF or CRLF. Labels are indexed in order of first appearance. Repeated
// lines become parallel edges and add a warning.
Dataset parse_edge_list(std::string_view text, std::string name = {});

// 0/1 grid separated by whitespace or commas, with an optional label row
// and label column. Rows are left vertices, columns right vertices.
Dataset parse_matrix(std::string_view text, std::string name = {});

std::string emit_edge_list(const Dataset& d);
// Throws InputError for multigraphs or labels the grid format cannot hold.
std::string emit_matrix(const Dataset& d);

inline constexpr std::string_view kFixtureNames[] = {"human_elephant", "human_monkey", "human_cat", "human_dog",
                                                     "human_lemur"};

std::filesystem::path default_datasets_dir();

std::string read_file(const std::filesystem::path& path);

// Reads `<dir>/<name>.json` and, when it names one, the edge list it points to.
Dataset load_fixture(const std::filesystem::path& dir, std::string_view name);

bool has_edges(const Dataset& d);

// Mismatches between the parsed graph and the published m, n, t, observed
// tree counts and component sizes. Each entry starts with the field name.
std::vector<std::string> fixture_discrepancies(const Dataset& d);

// Discrepancies not declared in published.known_discrepancies.
std::vector<std::string> unexpected_discrepancies(const Dataset& d);

}  // namespace oxford

#include "oxford/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "oxford/error.hpp"

namespace oxford {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Splits on '\n', dropping a trailing '\r'. Line numbers are 1-based.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    lines.emplace_back(number, line);
  }
  return lines;
}

class LabelIndex {
public:
  Vertex intern(std::string_view label) {
    auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<Vertex>(labels_.size()));
    if (inserted) labels_.emplace_back(label);
    return it->second;
  }
  std::vector<std::string> take() { return std::move(labels_); }

private:
  std::unordered_map<std::string, Vertex> index_;
  std::vector<std::string> labels_;
};

bool is_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::string_view> grid_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (std::isspace(static_cast<unsigned char>(line[k])) || line[k] == ',')) ++k;
    const auto start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])) && line[k] != ',') ++k;
    if (k > start) tokens.push_back(line.substr(start, k - start));
  }
  return tokens;
}

}  // namespace

Dataset parse_edge_list(std::string_view text, std::string name) {
  const auto lines = content_lines(text);
  Dataset d;
  d.name = std::move(name);
  LabelIndex left, right;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  bool first = true;
  for (const auto& [number, line] : lines) {
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw ParseError("expected 'left_label,right_label', got '" + std::string(line) + "'", number);
    const auto l = trim(line.substr(0, comma));
    const auto r = trim(line.substr(comma + 1));
    if (first && lower(l) == "left" && lower(r) == "right") {
      first = false;
      continue;
    }
    first = false;
    if (l.empty() || r.empty()) throw ParseError("empty label", number);
    const Edge e{left.intern(l), right.intern(r)};
    if (!seen.emplace(e.left, e.right).second)
      d.warnings.push_back("line " + std::to_string(number) + ": repeated edge " + std::string(l) + "," +
                           std::string(r) + " kept as a parallel edge");
    edges.push_back(e);
  }
  if (edges.empty()) throw EmptyError("edge list contains no edges");
  d.left_labels = left.take();
  d.right_labels = right.take();
  d.graph = BipartiteMultigraph(d.left_labels.size(), d.right_labels.size(), std::move(edges));
  return d;
}

Dataset parse_matrix(std::string_view text, std::string name) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw EmptyError("matrix input is empty");

  Dataset d;
  d.name = std::move(name);
  std::size_t row_begin = 0;
  std::vector<std::string_view> header;
  {
    const auto tokens = grid_tokens(lines[0].second);
    if (std::any_of(tokens.begin(), tokens.end(), [](auto tok) { return !is_integer(tok); })) {
      header = tokens;
      row_begin = 1;
    }
  }
  if (row_begin == lines.size()) throw EmptyError("matrix has a label row but no data rows");

  const bool row_labels = !is_integer(grid_tokens(lines[row_begin].second).front());
  std::size_t columns = 0;
  std::vector<Edge> edges;
  for (std::size_t r = row_begin; r < lines.size(); ++r) {
    const auto& [number, line] = lines[r];
    auto tokens = grid_tokens(line);
    std::string label = "L" + std::to_string(r - row_begin + 1);
    if (row_labels) {
      if (is_integer(tokens.front())) throw ParseError("missing row label", number);
      label = std::string(tokens.front());
      tokens.erase(tokens.begin());
    }
    if (r == row_begin) {
      columns = tokens.size();
      if (columns == 0) throw ParseError("row has no entries", number);
    } else if (tokens.size() != columns) {
      throw ParseError("ragged row: expected " + std::to_string(columns) + " entries, got " +
                           std::to_string(tokens.size()),
                       number);
    }
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      if (tokens[c] == "1")
        edges.push_back({static_cast<Vertex>(r - row_begin), static_cast<Vertex>(c)});
      else if (tokens[c] != "0")
        throw ParseError("entry '" + std::string(tokens[c]) + "' outside {0,1}", number);
    }
    d.left_labels.push_back(std::move(label));
  }

  if (!header.empty()) {
    if (header.size() == columns + 1)
      header.erase(header.begin());  // corner cell above the label column
    else if (header.size() != columns)
      throw ParseError("label row has " + std::to_string(header.size()) + " labels for " +
                           std::to_string(columns) + " columns",
                       lines[0].first);
    for (auto h : header) d.right_labels.emplace_back(h);
  } else {
    for (std::size_t c = 0; c < columns; ++c) d.right_labels.push_back("R" + std::to_string(c + 1));
  }

  d.graph = BipartiteMultigraph(d.left_labels.size(), d.right_labels.size(), std::move(edges));
  const auto ldeg = d.graph.left_degrees();
  const auto rdeg = d.graph.right_degrees();
  for (std::size_t v = 0; v < ldeg.size(); ++v)
    if (ldeg[v] == 0) d.warnings.push_back("isolated left vertex " + d.left_labels[v]);
  for (std::size_t v = 0; v < rdeg.size(); ++v)
    if (rdeg[v] == 0) d.warnings.push_back("isolated right vertex " + d.right_labels[v]);
  return d;
}

std::string emit_edge_list(const Dataset& d) {
  std::string out = "left,right\n";
  for (const auto& e : d.graph.edges()) {
    out += d.left_labels.at(e.left);
    out += ',';
    out += d.right_labels.at(e.right);
    out += '\n';
  }
  return out;
}

std::string emit_matrix(const Dataset& d) {
  if (d.graph.has_parallel_edges()) throw InputError("matrix format cannot represent parallel edges");
  const auto check = [](const std::string& label) {
    if (label.empty() || is_integer(label) || label.front() == '#' ||
        std::any_of(label.begin(), label.end(), [](unsigned char c) { return std::isspace(c) || c == ','; }))
      throw InputError("label '" + label + "' cannot be written to the matrix format");
  };
  for (const auto& l : d.left_labels) check(l);
  for (const auto& r : d.right_labels) check(r);

  const auto m = d.graph.m(), n = d.graph.n();
  std::vector<char> cell(m * n, 0);
  for (const auto& e : d.graph.edges()) cell[e.left * n + e.right] = 1;
  std::string out = "label";
  for (const auto& r : d.right_labels) out += ' ' + r;
  out += '\n';
  for (std::size_t l = 0; l < m; ++l) {
    out += d.left_labels[l];
    for (std::size_t r = 0; r < n; ++r) out += cell[l * n + r] ? " 1" : " 0";
    out += '\n';
  }
  return out;
}

std::filesystem::path default_datasets_dir() {
#ifdef OXFORD_DATASETS_DIR
  return OXFORD_DATASETS_DIR;
#else
  return "datasets";
#endif
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::pair<std::size_t, std::size_t> parse_tree_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw InputError("tree key '" + key + "' is not 'i,j'");
  return {std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1))};
}

template <class T>
std::optional<T> optional_field(const nlohmann::json& obj, const char* key) {
  if (obj.contains(key)) return obj.at(key).get<T>();
  return std::nullopt;
}

PublishedSummary parse_summary(const nlohmann::json& j) {
  PublishedSummary s;
  s.m = j.at("m").get<std::size_t>();
  s.n = j.at("n").get<std::size_t>();
  s.t = j.at("t").get<std::size_t>();
  if (j.contains("caption")) {
    const auto& c = j.at("caption");
    s.a = optional_field<double>(c, "a");
    s.b = optional_field<double>(c, "b");
    s.ab = optional_field<double>(c, "ab");
  }
  if (j.contains("text")) {
    const auto& c = j.at("text");
    s.text_a = optional_field<double>(c, "a");
    s.text_b = optional_field<double>(c, "b");
    s.text_ab = optional_field<double>(c, "ab");
  }
  if (j.contains("table1")) {
    const auto& t1 = j.at("table1");
    s.table1_example = t1.value("example", 0);
    s.table1_ab = optional_field<double>(t1, "ab");
    for (const auto& [key, v] : t1.at("expected").items()) s.expected_trees[parse_tree_key(key)] = v.get<double>();
    for (const auto& [key, v] : t1.at("observed").items())
      s.observed_trees[parse_tree_key(key)] = v.get<std::size_t>();
  }
  if (j.contains("component_sizes"))
    for (const auto& [key, v] : j.at("component_sizes").items())
      s.component_sizes[std::stoul(key)] = v.get<std::size_t>();
  if (j.contains("known_discrepancies"))
    s.known_discrepancies = j.at("known_discrepancies").get<std::vector<std::string>>();
  if (j.contains("notes")) s.notes = j.at("notes").get<std::vector<std::string>>();
  return s;
}

}  // namespace

Dataset load_fixture(const std::filesystem::path& dir, std::string_view name) {
  const auto meta_path = dir / (std::string(name) + ".json");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(read_file(meta_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(meta_path.string() + ": " + e.what(), 0);
  }
  Dataset d;
  if (meta.contains("edge_list")) {
    const auto edges_path = dir / meta.at("edge_list").get<std::string>();
    d = parse_edge_list(read_file(edges_path), std::string(name));
  } else {
    d.name = std::string(name);
  }
  try {
    d.published = parse_summary(meta);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(meta_path.string() + ": " + e.what(), 0);
  }
  return d;
}

bool has_edges(const Dataset& d) { return d.graph.t() > 0; }

std::vector<std::string> fixture_discrepancies(const Dataset& d) {
  std::vector<std::string> out;
  if (!d.published || !has_edges(d)) return out;
  const auto& p = *d.published;
  const auto compare = [&](const char* field, std::size_t published, std::size_t parsed) {
    if (published != parsed)
      out.push_back(std::string(field) + ": published " + std::to_string(published) + ", edges give " +
                    std::to_string(parsed));
  };
  compare("m", p.m, d.graph.m());
  compare("n", p.n, d.graph.n());
  compare("t", p.t, d.graph.t());

  const auto summary = components(d.graph);
  std::size_t max_i = 1, max_j = 1;
  for (const auto& [ij, count] : p.observed_trees) {
    max_i = std::max(max_i, ij.first);
    max_j = std::max(max_j, ij.second);
  }
  const auto census = tree_census(summary, max_i, max_j);
  for (const auto& [ij, count] : p.observed_trees) {
    const auto label = "A" + std::to_string(ij.first) + "," + std::to_string(ij.second);
    compare(label.c_str(), count, census.at(ij.first, ij.second));
  }
  if (!p.component_sizes.empty()) {
    std::map<std::size_t, std::size_t> sizes;
    for (const auto& c : summary.components) ++sizes[c.size()];
    if (sizes != p.component_sizes) out.push_back("component_sizes: published multiset differs from edges");
  }
  return out;
}

std::vector<std::string> unexpected_discrepancies(const Dataset& d) {
  auto all = fixture_discrepancies(d);
  if (!d.published) return all;
  const auto& known = d.published->known_discrepancies;
  std::erase_if(all, [&](const std::string& msg) {
    const auto field = msg.substr(0, msg.find(':'));
    return std::find(known.begin(), known.end(), field) != known.end();
  });
  return all;
}

}  // namespace oxford

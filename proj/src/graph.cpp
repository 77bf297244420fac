#include "oxford/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "oxford/error.hpp"

namespace oxford {

BipartiteMultigraph::BipartiteMultigraph(std::size_t m, std::size_t n, std::vector<Edge> edges)
    : m_(m), n_(n), edges_(std::move(edges)) {
  if (m_ > std::numeric_limits<Vertex>::max() || n_ > std::numeric_limits<Vertex>::max())
    throw InputError("vertex count exceeds 32-bit index range");
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    if (e.left >= m_ || e.right >= n_) {
      throw InputError("edge " + std::to_string(k) + " (" + std::to_string(e.left) + "," +
                       std::to_string(e.right) + ") out of range for m=" + std::to_string(m_) +
                       ", n=" + std::to_string(n_));
    }
  }
}

std::vector<std::size_t> BipartiteMultigraph::left_degrees() const {
  std::vector<std::size_t> deg(m_, 0);
  for (const auto& e : edges_) ++deg[e.left];
  return deg;
}

std::vector<std::size_t> BipartiteMultigraph::right_degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) ++deg[e.right];
  return deg;
}

bool BipartiteMultigraph::has_parallel_edges() const {
  std::vector<Edge> sorted(edges_.begin(), edges_.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

UnionFind::UnionFind(std::size_t size) : parent_(size), size_(size, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

ComponentSummary components(const BipartiteMultigraph& g) {
  const std::size_t m = g.m();
  const std::size_t n = g.n();
  UnionFind uf(m + n);
  for (const auto& e : g.edges()) uf.unite(e.left, m + e.right);

  constexpr auto kUnassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp_of_root(m + n, kUnassigned);
  std::vector<std::size_t> comp_of(m + n);

  ComponentSummary s;
  s.m = m;
  s.n = n;
  s.t = g.t();
  for (std::size_t v = 0; v < m + n; ++v) {
    const auto r = uf.find(v);
    if (comp_of_root[r] == kUnassigned) {
      comp_of_root[r] = s.components.size();
      s.components.emplace_back();
    }
    comp_of[v] = comp_of_root[r];
    auto& c = s.components[comp_of[v]];
    (v < m ? c.left : c.right) += 1;
  }
  for (const auto& e : g.edges()) ++s.components[comp_of[e.left]].edges;

  // Only components with e == i + j - 1 can be trees; check those for
  // repeated slots.
  std::vector<std::pair<std::size_t, Edge>> candidate_edges;
  for (const auto& e : g.edges()) {
    const auto id = comp_of[e.left];
    const auto& c = s.components[id];
    if (c.edges + 1 == c.size()) candidate_edges.emplace_back(id, e);
  }
  std::sort(candidate_edges.begin(), candidate_edges.end(),
            [](const auto& x, const auto& y) { return std::tie(x.first, x.second) < std::tie(y.first, y.second); });
  std::vector<char> has_parallel(s.components.size(), 0);
  for (std::size_t k = 1; k < candidate_edges.size(); ++k) {
    if (candidate_edges[k].first == candidate_edges[k - 1].first &&
        candidate_edges[k].second == candidate_edges[k - 1].second)
      has_parallel[candidate_edges[k].first] = 1;
  }

  for (std::size_t id = 0; id < s.components.size(); ++id) {
    auto& c = s.components[id];
    c.is_tree = c.edges + 1 == c.size() && !has_parallel[id];
    if (c.edges == 0) {
      s.isolated_left += c.left;
      s.isolated_right += c.right;
    }
    const auto size = c.size();
    if (size > s.largest_size) {
      s.second_largest_size = s.largest_size;
      s.largest_size = size;
      s.largest_index = id;
    } else if (size > s.second_largest_size) {
      s.second_largest_size = size;
    }
  }
  return s;
}

TreeCensus::TreeCensus(std::size_t max_i, std::size_t max_j)
    : max_i_(max_i), max_j_(max_j), counts_(max_i * max_j, 0) {
  if (max_i == 0 || max_j == 0) throw InputError("tree census bounds must be at least 1");
}

std::size_t& TreeCensus::at(std::size_t i, std::size_t j) {
  if (i < 1 || i > max_i_ || j < 1 || j > max_j_) throw InputError("tree census index out of range");
  return counts_[(i - 1) * max_j_ + (j - 1)];
}

std::size_t TreeCensus::at(std::size_t i, std::size_t j) const {
  if (i < 1 || i > max_i_ || j < 1 || j > max_j_) throw InputError("tree census index out of range");
  return counts_[(i - 1) * max_j_ + (j - 1)];
}

std::size_t TreeCensus::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

TreeCensus tree_census(const ComponentSummary& summary, std::size_t max_i, std::size_t max_j) {
  TreeCensus census(max_i, max_j);
  for (const auto& c : summary.components) {
    if (c.is_tree && c.left >= 1 && c.right >= 1 && c.left <= max_i && c.right <= max_j)
      ++census.at(c.left, c.right);
  }
  return census;
}

bool is_connected(const ComponentSummary& summary) { return summary.components.size() <= 1; }

bool is_connected(const BipartiteMultigraph& g) {
  if (g.m() + g.n() == 0) return true;
  if (g.t() + 1 < g.m() + g.n()) return false;
  UnionFind uf(g.m() + g.n());
  std::size_t merged = 0;
  for (const auto& e : g.edges()) merged += uf.unite(e.left, g.m() + e.right);
  return merged + 1 == g.m() + g.n();
}

MinDegree min_degree(const BipartiteMultigraph& g) {
  const auto l = g.left_degrees();
  const auto r = g.right_degrees();
  MinDegree d;
  if (!l.empty()) d.left = *std::min_element(l.begin(), l.end());
  if (!r.empty()) d.right = *std::min_element(r.begin(), r.end());
  return d;
}

std::size_t max_degree(const BipartiteMultigraph& g) {
  std::size_t best = 0;
  for (auto d : g.left_degrees()) best = std::max(best, d);
  for (auto d : g.right_degrees()) best = std::max(best, d);
  return best;
}

}  // namespace oxford

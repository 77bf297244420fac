#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace oxford {

using Vertex = std::uint32_t;

struct Edge {
  Vertex left = 0;
  Vertex right = 0;
  auto operator<=>(const Edge&) const = default;
};

// m left vertices, n right vertices and an ordered list of t edge slots.
// Parallel edges are kept; slot order is the edge labelling.
class BipartiteMultigraph {
public:
  BipartiteMultigraph() = default;
  BipartiteMultigraph(std::size_t m, std::size_t n, std::vector<Edge> edges = {});

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t t() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::vector<std::size_t> left_degrees() const;
  std::vector<std::size_t> right_degrees() const;

  // True when some (left, right) pair occurs in more than one slot.
  bool has_parallel_edges() const;

  friend bool operator==(const BipartiteMultigraph&, const BipartiteMultigraph&) = default;

private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// Disjoint sets with path halving and union by size.
class UnionFind {
public:
  explicit UnionFind(std::size_t size);

  std::size_t find(std::size_t x);
  // Returns false when x and y were already joined.
  bool unite(std::size_t x, std::size_t y);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct Component {
  std::size_t left = 0;   // i
  std::size_t right = 0;  // j
  std::size_t edges = 0;  // e, counting parallel slots
  bool is_tree = false;   // e == i + j - 1 and no parallel edge

  std::size_t size() const noexcept { return left + right; }
};

struct ComponentSummary {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  // Ordered by the first vertex reached scanning left 0..m-1 then right 0..n-1.
  std::vector<Component> components;
  std::size_t largest_index = 0;  // first component of maximum size
  std::size_t largest_size = 0;
  std::size_t second_largest_size = 0;
  std::size_t isolated_left = 0;
  std::size_t isolated_right = 0;

  const Component* largest() const {
    return components.empty() ? nullptr : &components[largest_index];
  }
};

ComponentSummary components(const BipartiteMultigraph& g);

// A[i][j] = number of components that are (i, j) trees, 1 <= i <= max_i,
// 1 <= j <= max_j.
class TreeCensus {
public:
  TreeCensus(std::size_t max_i, std::size_t max_j);

  std::size_t max_i() const noexcept { return max_i_; }
  std::size_t max_j() const noexcept { return max_j_; }
  std::size_t& at(std::size_t i, std::size_t j);
  std::size_t at(std::size_t i, std::size_t j) const;
  std::size_t total() const;

  friend bool operator==(const TreeCensus&, const TreeCensus&) = default;

private:
  std::size_t max_i_;
  std::size_t max_j_;
  std::vector<std::size_t> counts_;
};

TreeCensus tree_census(const ComponentSummary& summary, std::size_t max_i, std::size_t max_j);

bool is_connected(const BipartiteMultigraph& g);
bool is_connected(const ComponentSummary& summary);

struct MinDegree {
  std::size_t left = 0;
  std::size_t right = 0;
};
MinDegree min_degree(const BipartiteMultigraph& g);
std::size_t max_degree(const BipartiteMultigraph& g);

}  // namespace oxford

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "oxford/error.hpp"
#include "oxford/ingest.hpp"

using namespace oxford;

namespace {

std::map<std::size_t, std::size_t> size_histogram(const BipartiteMultigraph& g) {
  std::map<std::size_t, std::size_t> h;
  for (const auto& c : components(g).components) ++h[c.size()];
  return h;
}

std::vector<Edge> canonical_edges(const BipartiteMultigraph& g) {
  std::vector<Edge> e(g.edges().begin(), g.edges().end());
  std::sort(e.begin(), e.end());
  return e;
}

Dataset fixture(std::string_view name) { return load_fixture(default_datasets_dir(), name); }

}  // namespace

TEST(EdgeList, Basic) {
  const auto d = parse_edge_list("H17,E11\nH5,E3");
  EXPECT_EQ(d.graph.m(), 2u);
  EXPECT_EQ(d.graph.n(), 2u);
  EXPECT_EQ(d.graph.t(), 2u);
  EXPECT_EQ(d.left_labels, (std::vector<std::string>{"H17", "H5"}));
}

TEST(EdgeList, HeaderCommentsCrlf) {
  const auto d = parse_edge_list("# note\r\nleft,right\r\nA,x\r\n\r\nB,x\r\n  # indented comment\nA,y\n");
  EXPECT_EQ(d.graph.m(), 2u);
  EXPECT_EQ(d.graph.n(), 2u);
  EXPECT_EQ(d.graph.t(), 3u);
  EXPECT_TRUE(d.warnings.empty());
}

TEST(EdgeList, ParallelWarning) {
  const auto d = parse_edge_list("A,x\nA,x\n");
  EXPECT_EQ(d.graph.t(), 2u);
  EXPECT_TRUE(d.graph.has_parallel_edges());
  EXPECT_FALSE(d.warnings.empty());
}

TEST(EdgeList, Errors) {
  EXPECT_THROW(parse_edge_list(""), EmptyError);
  EXPECT_THROW(parse_edge_list("# only comments\n"), EmptyError);
  try {
    parse_edge_list("A,x\nB\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.exit_code(), 1);
  }
  EXPECT_THROW(parse_edge_list("A,x,y\n"), ParseError);
  EXPECT_THROW(parse_edge_list("A,\n"), ParseError);
}

TEST(Matrix, Identity) {
  const auto d = parse_matrix("1 0\n0 1\n");
  EXPECT_EQ(d.graph.t(), 2u);
  const auto s = components(d.graph);
  EXPECT_EQ(s.components.size(), 2u);
  EXPECT_EQ(tree_census(s, 1, 1).at(1, 1), 2u);
}

TEST(Matrix, AllOnes) {
  const auto d = parse_matrix("1,1\n1,1\n");
  const auto s = components(d.graph);
  ASSERT_EQ(s.components.size(), 1u);
  EXPECT_FALSE(s.components[0].is_tree);
  EXPECT_EQ(tree_census(s, 2, 2).total(), 0u);
}

TEST(Matrix, LabelsAndErrors) {
  const auto d = parse_matrix("label,x,y\nA,1,0\nB,1,1\n");
  EXPECT_EQ(d.left_labels, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(d.right_labels, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(d.graph.t(), 3u);
  const auto plain = parse_matrix("0 1\n1 0\n");
  EXPECT_EQ(plain.left_labels.front(), "L1");
  EXPECT_EQ(plain.right_labels.back(), "R2");
  EXPECT_THROW(parse_matrix("1 0\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix("1 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_matrix(""), EmptyError);
  EXPECT_FALSE(parse_matrix("1 0\n1 0\n").warnings.empty());  // isolated column
}

TEST(Matrix, RoundTrip) {
  const auto d = parse_matrix("label,x,y,z\nA,1,0,0\nB,1,1,0\nC,0,0,1\n");
  const auto again = parse_matrix(emit_matrix(d));
  EXPECT_EQ(again.left_labels, d.left_labels);
  EXPECT_EQ(again.right_labels, d.right_labels);
  EXPECT_EQ(again.graph, d.graph);
  EXPECT_THROW(emit_matrix(parse_edge_list("A,x\nA,x\n")), InputError);
}

TEST(Fixtures, LemurShape) {
  const auto d = fixture("human_lemur");
  EXPECT_EQ(d.graph.m(), 20u);
  EXPECT_EQ(d.graph.n(), 22u);
  EXPECT_EQ(d.graph.t(), 38u);
  const auto census = tree_census(components(d.graph), 2, 2);
  EXPECT_EQ(census.at(1, 1), 0u);
  EXPECT_EQ(census.at(2, 1), 0u);
  EXPECT_EQ(census.at(1, 2), 1u);
}

TEST(Fixtures, MonkeyComponents) {
  const auto d = fixture("human_monkey");
  EXPECT_EQ(d.graph.m(), 22u);
  EXPECT_EQ(d.graph.n(), 21u);
  EXPECT_EQ(d.graph.t(), 28u);
  EXPECT_EQ(size_histogram(d.graph), (std::map<std::size_t, std::size_t>{{2, 12}, {3, 3}, {4, 1}, {6, 1}}));
  EXPECT_FALSE(is_connected(d.graph));
  EXPECT_EQ(components(d.graph).components.size(), 17u);
  EXPECT_EQ(tree_census(components(d.graph), 1, 1).at(1, 1), 12u);
}

TEST(Fixtures, DogAndOthers) {
  EXPECT_EQ(tree_census(components(fixture("human_dog").graph), 1, 1).at(1, 1), 3u);
  EXPECT_EQ(tree_census(components(fixture("human_elephant").graph), 1, 1).at(1, 1), 4u);
  const auto cat = fixture("human_cat");
  EXPECT_EQ(cat.graph.n(), 18u);
  ASSERT_TRUE(cat.published.has_value());
  EXPECT_EQ(cat.published->n, 19u);
}

TEST(Fixtures, DiscrepanciesAreDeclared) {
  for (auto name : kFixtureNames) {
    const auto d = fixture(name);
    EXPECT_TRUE(unexpected_discrepancies(d).empty()) << name;
  }
  const auto cat = fixture("human_cat");
  const auto found = fixture_discrepancies(cat);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].rfind("n:", 0), 0u);
}

TEST(Fixtures, MatrixRoundTrip) {
  for (auto name : kFixtureNames) {
    const auto d = fixture(name);
    if (d.graph.has_parallel_edges()) continue;
    const auto again = parse_matrix(emit_matrix(d), d.name);
    // The grid fixes vertices and the edge set; slot order becomes row-major.
    EXPECT_EQ(canonical_edges(again.graph), canonical_edges(d.graph)) << name;
    EXPECT_EQ(again.left_labels, d.left_labels);
    EXPECT_EQ(again.right_labels, d.right_labels);
  }
}

TEST(Fixtures, EdgeListRoundTrip) {
  for (auto name : kFixtureNames) {
    const auto d = fixture(name);
    const auto again = parse_edge_list(emit_edge_list(d));
    EXPECT_EQ(again.graph, d.graph) << name;
  }
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(read_file("/nonexistent/file.csv"), IoError);
  EXPECT_THROW(load_fixture("/nonexistent", "human_lemur"), IoError);
  try {
    read_file("/nonexistent/file.csv");
  } catch (const Error& e) {
    EXPECT_EQ(e.exit_code(), 2);
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dscc/multigraph.hpp"
#include "support.hpp"

namespace dscc {
namespace {

std::vector<VertexId> sorted_members(const LevelGraph& g, NodeId x) {
  auto m = g.members(x);
  std::vector<VertexId> out(m.begin(), m.end());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(LevelGraph, BuildGivesSingletons) {
  const std::vector<EdgePair> edges = {{0, 1}, {1, 2}, {2, 0}};
  auto g = LevelGraph::build(3, edges);
  EXPECT_EQ(g.node_count(), 3);
  EXPECT_EQ(g.linked_edge_count(), 3);
  EXPECT_EQ(g.feedback_count(), 0);
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(g.flatten_size(g.node_of(v)), 1);
}

TEST(LevelGraph, DegenerateGraph) {
  auto g = LevelGraph::build(1, {});
  EXPECT_EQ(g.node_count(), 1);
  EXPECT_EQ(g.linked_edge_count(), 0);
}

TEST(LevelGraph, LoopAndParallelEdgesRetained) {
  const std::vector<EdgePair> edges = {{0, 0}, {0, 1}, {0, 1}};
  auto g = LevelGraph::build(2, edges);
  EXPECT_EQ(g.out_edges(g.node_of(0)).size(), 3u);
  EXPECT_EQ(g.in_edges(g.node_of(1)).size(), 2u);
  EXPECT_EQ(g.in_edges(g.node_of(0)).size(), 1u);
}

TEST(LevelGraph, RejectsOutOfRangeEndpoint) {
  const std::vector<EdgePair> edges = {{0, 5}};
  EXPECT_THROW(LevelGraph::build(3, edges), InputError);
}

TEST(LevelGraph, SplitNodeMovesEdges) {
  // a=0, b=1, c=2 in one node; an outside vertex 3 keeps edges to each.
  const std::vector<EdgePair> edges = {{0, 1}, {1, 2}, {3, 0}, {2, 3}};
  auto store = std::make_shared<EdgeStore>(4, edges);
  const std::vector<int> label = {0, 0, 0, 1};
  LevelGraph g(store, label);
  const NodeId y = g.node_of(0);
  const std::vector<VertexId> part = {0};
  const NodeSplit r = g.split_node(y, part);
  EXPECT_EQ(sorted_members(g, r.part), (std::vector<VertexId>{0}));
  EXPECT_EQ(sorted_members(g, r.rest), (std::vector<VertexId>{1, 2}));
  EXPECT_EQ(g.node_of(0), r.part);
  EXPECT_EQ(g.tail(0), r.part);
  EXPECT_EQ(g.head(0), r.rest);
  EXPECT_EQ(g.head(2), r.part);
  EXPECT_EQ(g.out_edges(r.part).size(), 1u);
  EXPECT_EQ(g.in_edges(r.part).size(), 1u);
  EXPECT_EQ(g.in_edges(r.rest).size(), 2u);
  EXPECT_EQ(g.out_edges(r.rest).size(), 2u);  // 1->2 is now a self-loop of {b,c}
  EXPECT_EQ(g.node_count(), 3);
}

TEST(LevelGraph, SplitNodeParallelEdgesFollow) {
  const std::vector<EdgePair> edges = {{0, 1}, {0, 1}};
  auto store = std::make_shared<EdgeStore>(2, edges);
  const std::vector<int> label = {7, 7};
  LevelGraph g(store, label);
  const std::vector<VertexId> part = {1};
  const NodeSplit r = g.split_node(g.node_of(0), part);
  for (EdgeId e : {0, 1}) {
    EXPECT_EQ(g.tail(e), r.rest);
    EXPECT_EQ(g.head(e), r.part);
  }
  EXPECT_EQ(g.out_edges(r.rest).size(), 2u);
  EXPECT_EQ(g.in_edges(r.part).size(), 2u);
}

TEST(LevelGraph, SplitNodeContract) {
  auto store = std::make_shared<EdgeStore>(3, std::vector<EdgePair>{});
  const std::vector<int> label = {0, 0, 1};
  LevelGraph g(store, label);
  const NodeId y = g.node_of(0);
  EXPECT_THROW(g.split_node(y, std::vector<VertexId>{}), ContractViolation);
  EXPECT_THROW(g.split_node(y, std::vector<VertexId>{0, 1}), ContractViolation);
  EXPECT_THROW(g.split_node(y, std::vector<VertexId>{2}), ContractViolation);
  EXPECT_THROW(g.split_node(y, std::vector<VertexId>{0, 0}), ContractViolation);
}

TEST(LevelGraph, RepeatedSplitsMoveEachEdgeLogarithmicallyOften) {
  std::mt19937_64 rng(7);
  for (int n : {16, 64, 256}) {
    const auto edges = testing::random_edges(rng, n, 4 * n, true);
    auto store = std::make_shared<EdgeStore>(n, edges);
    LevelGraph g(store, std::vector<int>(n, 0));
    // Peel random vertices off random nodes until everything is a singleton.
    std::vector<NodeId> big = {g.node_of(0)};
    while (!big.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, big.size() - 1);
      const std::size_t i = pick(rng);
      const NodeId y = big[i];
      auto m = g.members(y);
      std::vector<VertexId> verts(m.begin(), m.end());
      testing::shuffle(verts, rng);
      std::uniform_int_distribution<std::size_t> cut(1, verts.size() - 1);
      verts.resize(cut(rng));
      const NodeSplit r = g.split_node(y, verts);
      big.erase(big.begin() + static_cast<std::ptrdiff_t>(i));
      for (NodeId h : {r.part, r.rest}) {
        if (g.flatten_size(h) > 1) big.push_back(h);
      }
    }
    EXPECT_EQ(g.node_count(), n);
    const double bound = 2.0 * static_cast<double>(edges.size()) * std::ceil(std::log2(n));
    EXPECT_LE(static_cast<double>(g.edge_moves()), bound) << "n=" << n;
  }
}

TEST(LevelGraph, UnlinkAndFeedback) {
  const std::vector<EdgePair> edges = {{0, 1}, {1, 0}};
  auto g = LevelGraph::build(2, edges);
  g.unlink_edge(0);
  g.unlink_edge(0);
  EXPECT_FALSE(g.has_edge(0));
  EXPECT_EQ(g.linked_edge_count(), 1);
  g.add_feedback(g.node_of(1));
  EXPECT_TRUE(g.vertex_in_feedback(1));
  EXPECT_EQ(g.feedback_count(), 1);

  auto store = std::make_shared<EdgeStore>(2, edges);
  LevelGraph merged(store, std::vector<int>{0, 0});
  EXPECT_THROW(merged.add_feedback(merged.node_of(0)), ContractViolation);
}

TEST(LevelGraph, InducedViews) {
  const std::vector<EdgePair> edges = {{0, 1}, {1, 0}, {2, 2}};
  auto g = LevelGraph::build(3, edges);
  const std::vector<NodeId> all = g.nodes();
  View whole = g.induced_view(all);
  EXPECT_TRUE(whole.edge_in(0));
  EXPECT_TRUE(whole.edge_in(1));
  EXPECT_FALSE(whole.edge_in(2));  // self-loop

  const std::vector<NodeId> a = {g.node_of(0)};
  View just_a = g.induced_view(a);
  EXPECT_FALSE(just_a.edge_in(0));
  EXPECT_FALSE(just_a.edge_in(1));
  EXPECT_TRUE(just_a.contains(g.node_of(0)));
  EXPECT_FALSE(just_a.contains(g.node_of(1)));

  const std::vector<NodeId> c = {g.node_of(2)};
  View loop = g.induced_view(c);
  for (EdgeId e : g.out_edges(g.node_of(2))) EXPECT_FALSE(loop.edge_in(e));
}

}  // namespace
}  // namespace dscc

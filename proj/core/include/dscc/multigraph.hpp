#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dscc/edge_store.hpp"
#include "dscc/types.hpp"

namespace dscc {

class LevelGraph;

/// Outcome of LevelGraph::split_node. `part` holds the requested vertex set,
/// `rest` the remainder; `created` is whichever of the two got a fresh id (the
/// smaller half, which is also the half whose edges were moved).
struct NodeSplit {
  NodeId part = kNone;
  NodeId rest = kNone;
  NodeId created = kNone;
};

/// Nodes of a LevelGraph carrying one view id. Edge deletions through a view
/// act on the parent graph; membership is a per-node label, so relabeling a
/// node moves it between views in O(1).
struct View {
  LevelGraph* graph = nullptr;
  ViewId id = kNoView;

  bool contains(NodeId x) const;
  /// Edge present at this level with both endpoints inside the view and in
  /// different nodes.
  bool edge_in(EdgeId e) const;
};

/// One level of the hierarchy: a partition of the vertex set into nodes plus
/// per-node incidence lists over a shared EdgeStore. Edge endpoints are stored
/// as vertices; the node endpoints are always derived through node_of().
class LevelGraph {
 public:
  /// Singleton partition over a fresh edge store.
  static LevelGraph build(int n, std::span<const EdgePair> edges);

  /// Partition given by `node_label` (one label per vertex, any integers);
  /// empty means singletons. Every alive edge of `store` is linked.
  LevelGraph(std::shared_ptr<EdgeStore> store, std::span<const int> node_label = {});

  const EdgeStore& store() const { return *store_; }
  EdgeStore& store() { return *store_; }
  const std::shared_ptr<EdgeStore>& shared_store() const { return store_; }

  int vertex_count() const { return store_->vertex_count(); }
  int node_capacity() const { return static_cast<int>(members_.size()); }
  int node_count() const { return live_nodes_; }
  bool node_alive(NodeId x) const {
    return x >= 0 && x < node_capacity() && !members_[x].empty();
  }
  std::vector<NodeId> nodes() const;

  NodeId node_of(VertexId v) const { return node_of_[v]; }
  std::span<const VertexId> members(NodeId x) const { return members_[x]; }
  int flatten_size(NodeId x) const { return static_cast<int>(members_[x].size()); }

  NodeId tail(EdgeId e) const { return node_of_[store_->from(e)]; }
  NodeId head(EdgeId e) const { return node_of_[store_->to(e)]; }

  /// Alive edges incident to node x at this level, self-loops included.
  std::span<const EdgeId> out_edges(NodeId x) const { return out_[x]; }
  std::span<const EdgeId> in_edges(NodeId x) const { return in_[x]; }
  bool has_edge(EdgeId e) const { return out_pos_[e] != kNone; }
  std::int64_t linked_edge_count() const { return linked_; }

  /// Removes e from this level's incidence lists; no-op when already unlinked.
  void unlink_edge(EdgeId e);

  /// Replaces node y by `part` and members(y) minus `part`. Moves the incident
  /// edges of the smaller half only.
  NodeSplit split_node(NodeId y, std::span<const VertexId> part);

  bool is_feedback(NodeId x) const { return feedback_[x] != 0; }
  bool vertex_in_feedback(VertexId v) const { return is_feedback(node_of_[v]); }
  /// Requires a single-vertex node.
  void add_feedback(NodeId x);
  int feedback_count() const { return feedback_count_; }

  ViewId view_of(NodeId x) const { return view_[x]; }
  void set_view(NodeId x, ViewId id) { view_[x] = id; }
  ViewId new_view_id() { return next_view_++; }
  /// Labels `nodes` with a fresh view id.
  View induced_view(std::span<const NodeId> nodes);
  View view(ViewId id) { return View{this, id}; }

  std::uint64_t edge_moves() const { return edge_moves_; }

 private:
  void link(EdgeId e);
  static void remove_at(std::vector<EdgeId>& list, std::vector<std::int32_t>& pos, EdgeId e);
  NodeId new_node();

  std::shared_ptr<EdgeStore> store_;
  std::vector<NodeId> node_of_;
  std::vector<std::int32_t> member_pos_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::int32_t> out_pos_;
  std::vector<std::int32_t> in_pos_;
  std::vector<char> feedback_;
  std::vector<ViewId> view_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t mark_stamp_ = 0;
  int live_nodes_ = 0;
  int feedback_count_ = 0;
  std::int64_t linked_ = 0;
  ViewId next_view_ = 0;
  std::uint64_t edge_moves_ = 0;
};

inline bool View::contains(NodeId x) const {
  return x != kNone && graph->view_of(x) == id && id != kNoView;
}

inline bool View::edge_in(EdgeId e) const {
  if (!graph->has_edge(e)) return false;
  const NodeId a = graph->tail(e);
  const NodeId b = graph->head(e);
  return a != b && contains(a) && contains(b);
}

}  // namespace dscc

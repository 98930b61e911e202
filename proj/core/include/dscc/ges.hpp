#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dscc/multigraph.hpp"
#include "dscc/types.hpp"

namespace dscc {

struct WorkCounters {
  std::uint64_t edge_scans = 0;
  std::uint64_t level_increases = 0;
  std::uint64_t tree_edge_removals = 0;
  std::uint64_t nodes_pruned = 0;

  WorkCounters& operator+=(const WorkCounters& o) {
    edge_scans += o.edge_scans;
    level_increases += o.level_increases;
    tree_edge_removals += o.tree_edge_removals;
    nodes_pruned += o.nodes_pruned;
    return *this;
  }
};

/// Per-node tree state for every tree living on one LevelGraph. Trees on the
/// same level own disjoint node sets, so they share these arrays instead of
/// each allocating O(node_capacity) of their own.
struct GesSlots {
  std::array<std::vector<int>, 2> level;
  std::array<std::vector<EdgeId>, 2> parent;
  std::array<std::vector<std::vector<EdgeId>>, 2> cand;
  std::array<std::vector<char>, 2> queued;
  std::vector<std::int32_t> pos;  // index into the owning tree's node list

  void ensure(int capacity);
};

struct GesOptions {
  /// Walk the parent chain on every reconnection to catch 0-weight cycles.
  bool verify = false;
  /// Depth cap becomes max(depth_cap, feedback nodes in the view), so an
  /// infinite level means "unreachable" rather than "too far".
  bool cap_tracks_feedback = false;
};

/// Out- and in-tree of S-distances from/to the node holding `center`, where an
/// edge costs 1 iff its tail is a feedback node. Levels are truncated at the
/// depth cap; nodes beyond it in either tree are reported as unreachable.
class GesTree {
 public:
  /// `nodes` must already carry view.id.
  GesTree(View view, GesSlots& slots, VertexId center, int depth_cap,
          std::span<const NodeId> nodes, GesOptions options = {});

  GesTree(const GesTree&) = delete;
  GesTree& operator=(const GesTree&) = delete;

  int distance_from(NodeId x) const;  // dist(center, x)
  int distance_to(NodeId x) const;    // dist(x, center)
  int level(Direction dir, NodeId x) const;
  EdgeId parent_edge(Direction dir, NodeId x) const;

  /// Unlinks e from the level graph and repairs both trees.
  void delete_edge(EdgeId e);
  /// Tells the tree that e was unlinked by someone else. Call repair() after.
  void edge_removed(EdgeId e);
  /// Removes the nodes from the view (they keep their node ids in the graph).
  void delete_nodes(std::span<const NodeId> victims, bool repair_now = true);
  /// Replaces y by `part` and members(y) minus `part`.
  NodeSplit split_node(NodeId y, std::span<const VertexId> part, bool repair_now = true);
  /// Marks single-vertex nodes as feedback nodes.
  void augment(std::span<const NodeId> new_feedback, bool repair_now = true);
  void repair();

  /// Some node with an infinite level in either tree, or kNone.
  NodeId get_unreachable();
  /// Every node currently at infinite level in either tree, without repeats.
  /// Clears the pending list.
  std::vector<NodeId> take_unreachable();
  std::vector<NodeId> get_all_nodes() const { return nodes_; }

  View view() const { return view_; }
  ViewId view_id() const { return view_.id; }
  VertexId center_vertex() const { return center_; }
  NodeId center_node() const { return view_.graph->node_of(center_); }
  int depth_cap() const { return cap_; }
  int effective_cap() const;
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int feedback_count() const { return feedback_count_; }
  std::int64_t flatten_size() const { return flatten_size_; }
  std::int64_t init_flatten() const { return init_flatten_; }
  const WorkCounters& counters() const { return counters_; }

 private:
  NodeId parent_side(int d, EdgeId e) const;
  NodeId child_side(int d, EdgeId e) const;
  int weight(EdgeId e) const;
  std::span<const EdgeId> child_edges(int d, NodeId x) const;   // x as parent side
  std::span<const EdgeId> parent_edges(int d, NodeId x) const;  // x as child side
  void refill(int d, NodeId x);
  void enqueue(int d, NodeId x);
  void detach(int d, NodeId x);
  void detach_children(int d, NodeId x);
  void mark_infinite(int d, NodeId x);
  void count_level(int d, int lv, int delta);
  void init_tree(int d);
  void fix(int d);
  bool try_reconnect(int d, NodeId x, int l);
  void check_no_cycle(int d, NodeId x, NodeId p) const;
  void add_node(NodeId x);
  void remove_node(NodeId x);
  void require_node(NodeId x) const;

  View view_;
  LevelGraph* g_;
  GesSlots* s_;
  VertexId center_;
  int cap_;
  GesOptions opt_;
  std::vector<NodeId> nodes_;
  std::array<std::vector<std::vector<NodeId>>, 2> buckets_;
  std::array<std::size_t, 2> cursor_{0, 0};
  std::array<std::vector<int>, 2> at_level_;  // finite nodes per level
  std::vector<NodeId> unreachable_;
  int feedback_count_ = 0;
  std::int64_t flatten_size_ = 0;
  std::int64_t init_flatten_ = 0;
  WorkCounters counters_;
};

}  // namespace dscc

#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dscc/ges.hpp"
#include "dscc/multigraph.hpp"
#include "dscc/types.hpp"

namespace dscc {

struct SeparatorResult {
  std::vector<NodeId> s_sep;  // feedback nodes of the cut layer
  std::vector<NodeId> v_sep;  // the side holding the root
  std::uint64_t edges_touched = 0;
  std::int64_t v_flatten = 0;  // total vertex count of v_sep
  int layer = 0;               // index of the cut layer
  bool forced = false;         // cut at layer d without meeting the size rule
};

/// Layered 0/1-BFS separator that advances one edge examination per step(),
/// so that two of them can be raced.
///
/// kOut grows layers of dist(root, x, S); a feedback node's out-edges lead to
/// the next layer. kIn grows layers of dist(x, root, S) over reversed edges;
/// entering a feedback node leads to the next layer. Either way the cut is the
/// set of feedback nodes on layer i for the first i >= 1 with L_i & S empty or
///   |L_i & S| < (2 lg n / d) * min(sum_{j<i} |L_j & S|, rest),
/// where rest counts the view's feedback nodes beyond layer i. If no layer
/// below d qualifies, layer d is cut anyway, so every node of the result is
/// within distance d of the root.
class LayeredSeparator {
 public:
  LayeredSeparator(View view, NodeId root, Direction dir, int d, int feedback_in_view,
                   int n_global);

  /// Returns true once the result is available.
  bool step();
  bool done() const { return done_; }
  void run() {
    while (!step()) {
    }
  }
  const SeparatorResult& result() const { return result_; }
  SeparatorResult take() { return std::move(result_); }
  Direction direction() const { return dir_; }

 private:
  std::span<const EdgeId> edges_of(NodeId x) const;
  NodeId other_end(EdgeId e) const;
  void visit(NodeId y, int layer);
  bool check_cut(int layer, std::span<const NodeId> cut);
  void finish(int layer, std::vector<NodeId> cut);

  View view_;
  LevelGraph* g_;
  Direction dir_;
  int d_;
  double factor_;
  int total_s_;
  bool done_ = false;
  SeparatorResult result_;

  std::unordered_map<NodeId, int> layer_of_;
  std::vector<NodeId> visited_;
  int layer_ = 0;
  std::int64_t s_before_ = 0;  // sum_{j<layer_} |L_j & S|

  // Node whose edges are being scanned, and the position in its list.
  NodeId cur_ = kNone;
  std::size_t edge_pos_ = 0;
  bool expanding_frontier_ = false;  // kOut only: scanning the S nodes of layer_

  std::vector<NodeId> queue_;  // current layer's nodes still to expand
  std::size_t queue_head_ = 0;
  std::vector<NodeId> frontier_;  // kOut: S nodes of layer_
  std::size_t frontier_head_ = 0;
  std::vector<NodeId> next_;  // S nodes of layer_ + 1
  int s_in_layer_ = 0;        // kIn: |L_layer_ & S|
};

SeparatorResult out_separator(View view, NodeId root, int d, int feedback_in_view, int n_global);
SeparatorResult in_separator(View view, NodeId root, int d, int feedback_in_view, int n_global);

struct RaceResult {
  SeparatorResult result;
  Direction direction = Direction::kOut;
  bool resumed = false;  // the first finisher was too large and the other one ran on
  std::uint64_t steps = 0;
  std::uint64_t edges_touched = 0;  // both directions together
};

/// Alternates single steps of the out- and in-separator from `root`, out first,
/// so a tie goes to kOut.
RaceResult race_separators(View view, NodeId root, int d, int feedback_in_view, int n_global,
                           std::int64_t view_flatten);

struct SplitStats {
  std::uint64_t separator_edge_scans = 0;
  std::uint64_t ges_edge_scans = 0;
  std::uint64_t calls = 0;
  std::uint64_t ratio_violations = 0;  // recursion on more than 2/3 of the parent
  std::uint64_t center_fallbacks = 0;
  int max_depth = 0;

  SplitStats& operator+=(const SplitStats& o);
};

struct SplitResult {
  std::vector<NodeId> s_split;
  std::vector<std::vector<NodeId>> partition;
  SplitStats stats;
};

/// Decomposes the nodes into parts of S-diameter at most d after removing the
/// edges of s_split. Every node ends up in exactly one part (separator nodes
/// as singletons). The nodes' view labels are consumed; callers relabel.
SplitResult split(LevelGraph& graph, GesSlots& slots, std::span<const NodeId> nodes, int d,
                  int n_global);

}  // namespace dscc

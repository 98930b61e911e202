#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dscc/edge_store.hpp"
#include "dscc/ges.hpp"
#include "dscc/multigraph.hpp"
#include "dscc/separator.hpp"
#include "dscc/types.hpp"

namespace dscc {

struct HierarchyOptions {
  int delta = 0;  // 0 selects max(2, ceil(64 lg^2 n))
  std::uint64_t seed = 1;
  bool verify = false;  // cycle checks inside every GES reconnection
};

struct LevelStats {
  WorkCounters ges;                        // all trees ever built on this level
  std::uint64_t split_edge_scans = 0;      // separators and trees inside Split
  std::uint64_t separator_edge_scans = 0;  // separators run by the deletion handler
  std::uint64_t ges_inits = 0;
  std::uint64_t trees_destroyed = 0;
  std::uint64_t center_fallbacks = 0;
  std::uint64_t edge_moves = 0;  // incidence-list moves caused by node splits
  std::int64_t s_size = 0;       // |S_i| in vertices
  int scc_count = 0;             // nodes one level up
};

struct HierarchyStats {
  std::vector<LevelStats> levels;
  std::vector<double> root_shrink_ratios;  // largest new part / initial tree size, per destroyed tree
  std::uint64_t deletions = 0;

  std::uint64_t total_work() const;
};

/// Decremental strongly-connected components (or single-source reachability)
/// over a fixed vertex set. Levels 0..L with L = floor(lg n) + 1; level L's
/// nodes are the SCCs of the current graph.
class Hierarchy {
 public:
  static Hierarchy new_scc(int n, std::span<const EdgePair> edges, HierarchyOptions opts = {});
  /// Adds an edge v -> source for every vertex, so reaches(v) == same_scc(source, v).
  static Hierarchy new_ssr(int n, std::span<const EdgePair> edges, VertexId source,
                           HierarchyOptions opts = {});

  Hierarchy(Hierarchy&&) noexcept;
  Hierarchy& operator=(Hierarchy&&) noexcept;
  ~Hierarchy();

  /// Deletes the lowest-id alive edge u -> v. InputError if there is none.
  void delete_edge(VertexId u, VertexId v);
  /// Deletes a user edge by id (ids follow the input order).
  void delete_edge_id(EdgeId e);

  bool same_scc(VertexId u, VertexId v) const;
  NodeId scc_id(VertexId u) const;
  bool reaches(VertexId v) const;
  bool is_ssr() const { return source_ != kNone; }
  VertexId source() const { return source_; }

  int vertex_count() const { return n_; }
  int user_edge_count() const { return user_edges_; }
  bool edge_alive(EdgeId e) const;
  int delta() const { return delta_; }
  int level_count() const { return top_ + 1; }
  std::int64_t s_set_size(int level) const;
  std::vector<int> scc_labels() const;
  HierarchyStats stats() const;

  /// Structural self-check; returns an empty string when everything holds.
  std::string check_invariants() const;

  const LevelGraph& level_graph(int i) const { return *graph_[i]; }

 private:
  Hierarchy(int n, std::shared_ptr<EdgeStore> store, int user_edges, VertexId source,
            HierarchyOptions opts);

  void build();
  GesOptions ges_options(int level) const;
  void init_partition(int level, std::span<const std::vector<NodeId>> parts);
  GesTree& make_tree(int level, ViewId vid, std::span<const NodeId> nodes);
  GesTree* tree_for(int level, NodeId x);
  void retire_tree(int level, ViewId vid);
  void process_level(int level);
  void handle(int level, GesTree& tree, NodeId unreachable);
  void handle_top(int level, GesTree& tree);
  void propagate(int level, std::span<const std::vector<NodeId>> parts, std::size_t keep,
                 std::span<const NodeId> separators);
  std::vector<std::vector<NodeId>> components(int level, std::span<const NodeId> nodes);
  std::vector<VertexId> flatten(int level, std::span<const NodeId> nodes) const;
  void remove_edge(EdgeId e);

  int n_;
  int delta_;
  int top_;  // L
  int user_edges_;
  VertexId source_;
  HierarchyOptions opts_;
  std::shared_ptr<EdgeStore> store_;
  std::vector<std::unique_ptr<LevelGraph>> graph_;  // 0..L
  std::vector<std::unique_ptr<GesSlots>> slots_;    // 0..L-1
  std::vector<std::unordered_map<ViewId, std::unique_ptr<GesTree>>> trees_;
  std::vector<std::vector<ViewId>> worklist_;
  std::vector<LevelStats> level_stats_;  // retired tree counters plus handler work
  std::vector<double> root_shrink_;
  std::uint64_t deletions_ = 0;
  std::mt19937_64 rng_;
};

/// max(2, ceil(64 lg^2 n)).
int auto_delta(int n);

}  // namespace dscc

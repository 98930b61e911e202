#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dscc/hierarchy.hpp"
#include "dscc/types.hpp"

namespace dscc {

/// Reachability from a fixed source set under vertex insertions and deletions.
/// Each source has a decremental SSR structure built at the last rebuild; each
/// vertex r inserted since then has two more, built when r arrived: one for
/// "r reaches x" and one for "x reaches r". A path from s to v that uses
/// inserted vertices is witnessed by the latest of them, r, whose structures
/// saw every edge on the path. After t insertions everything is rebuilt.
class FullyDynamicReach {
 public:
  FullyDynamicReach(int n, std::span<const EdgePair> edges, std::span<const VertexId> sources,
                    int t, HierarchyOptions opts = {});
  ~FullyDynamicReach();

  /// Adds vertex u with edges that each have u as an endpoint. Ids past the
  /// current universe grow it; absent ids below it are reused.
  void insert_vertex(VertexId u, std::span<const EdgePair> incident);
  void delete_vertex(VertexId u);
  bool query(VertexId s, VertexId v);

  bool present(VertexId v) const;
  int universe() const { return static_cast<int>(present_.size()); }
  int threshold() const { return t_; }
  int pending() const { return static_cast<int>(inserted_.size()); }
  std::uint64_t rebuilds() const { return rebuilds_; }
  std::uint64_t insertions() const { return insertions_; }
  std::uint64_t last_query_probes() const { return last_probes_; }
  std::uint64_t max_query_probes() const { return max_probes_; }
  std::vector<EdgePair> alive_edges() const;
  const std::vector<VertexId>& sources() const { return sources_; }

 private:
  struct Snapshot;
  std::unique_ptr<Snapshot> snapshot(VertexId root, bool reversed);
  void rebuild();
  bool probe(const Snapshot& s, VertexId v) const;

  int t_;
  HierarchyOptions opts_;
  std::uint64_t next_seed_;
  std::vector<char> present_;
  std::vector<EdgePair> edges_;  // global edge ids
  std::vector<char> edge_alive_;
  std::vector<VertexId> sources_;
  std::vector<std::unique_ptr<Snapshot>> base_;  // parallel to sources_
  struct Inserted {
    VertexId vertex;
    std::unique_ptr<Snapshot> out;  // r reaches x
    std::unique_ptr<Snapshot> in;   // x reaches r
  };
  std::vector<Inserted> inserted_;
  std::uint64_t rebuilds_ = 0;
  std::uint64_t insertions_ = 0;
  std::uint64_t last_probes_ = 0;
  std::uint64_t max_probes_ = 0;
};

}  // namespace dscc

#pragma once

#include <span>
#include <vector>

#include "dscc/types.hpp"

namespace dscc {

// Edges keyed by original vertices. Ids are dense and never reused; a deleted
// edge keeps its id with alive() == false.
class EdgeStore {
 public:
  EdgeStore(int vertex_count, std::span<const EdgePair> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(from_.size()); }
  int alive_count() const { return alive_count_; }

  VertexId from(EdgeId e) const { return from_[e]; }
  VertexId to(EdgeId e) const { return to_[e]; }
  bool alive(EdgeId e) const { return alive_[e] != 0; }
  bool valid_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }
  bool valid_vertex(VertexId v) const { return v >= 0 && v < vertex_count_; }

  void kill(EdgeId e);

  // Includes dead edges; callers filter.
  std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }

  // Lowest-id alive edge u->v, or kNone.
  EdgeId find_alive(VertexId u, VertexId v) const;

  std::vector<EdgePair> alive_edges() const;

 private:
  int vertex_count_;
  int alive_count_ = 0;
  std::vector<VertexId> from_;
  std::vector<VertexId> to_;
  std::vector<char> alive_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

}  // namespace dscc

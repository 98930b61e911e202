#include "dscc/edge_store.hpp"

#include <string>

namespace dscc {

EdgeStore::EdgeStore(int vertex_count, std::span<const EdgePair> edges)
    : vertex_count_(vertex_count), out_(vertex_count), in_(vertex_count) {
  if (vertex_count < 1) throw InputError("graph needs at least one vertex");
  from_.reserve(edges.size());
  to_.reserve(edges.size());
  alive_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (!valid_vertex(u) || !valid_vertex(v)) {
      throw InputError("edge endpoint out of range: " + std::to_string(u) + " " +
                       std::to_string(v));
    }
    const auto e = static_cast<EdgeId>(from_.size());
    from_.push_back(u);
    to_.push_back(v);
    alive_.push_back(1);
    out_[u].push_back(e);
    in_[v].push_back(e);
  }
  alive_count_ = static_cast<int>(from_.size());
}

void EdgeStore::kill(EdgeId e) {
  if (!valid_edge(e) || !alive(e)) throw ContractViolation("kill: edge is not alive");
  alive_[e] = 0;
  --alive_count_;
}

EdgeId EdgeStore::find_alive(VertexId u, VertexId v) const {
  if (!valid_vertex(u) || !valid_vertex(v)) return kNone;
  for (EdgeId e : out_[u]) {
    if (alive_[e] && to_[e] == v) return e;
  }
  return kNone;
}

std::vector<EdgePair> EdgeStore::alive_edges() const {
  std::vector<EdgePair> out;
  out.reserve(alive_count_);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    if (alive_[e]) out.emplace_back(from_[e], to_[e]);
  }
  return out;
}

}  // namespace dscc

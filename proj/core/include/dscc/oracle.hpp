#pragma once

#include <span>
#include <vector>

#include "dscc/types.hpp"

// Deliberately naive ground truth. Nothing here shares code with the dynamic
// structures it is used to check.
namespace dscc::oracle {

struct SccPartition {
  std::vector<int> label;                     // vertex -> component index
  std::vector<std::vector<VertexId>> components;  // reverse topological order
  int count() const { return static_cast<int>(components.size()); }
};

/// Iterative Tarjan, O(n + m).
SccPartition tarjan_scc(std::span<const EdgePair> edges, int n);

/// Mutual reachability through a Floyd-Warshall style closure, O(n^3).
SccPartition closure_scc(std::span<const EdgePair> edges, int n);

/// True iff two label vectors induce the same partition.
bool same_partition(std::span<const int> a, std::span<const int> b);

/// S-distance from u to v: minimum number of vertices of S \ {v} on a u->v
/// path, i.e. 0/1-BFS with weight 1 on edges leaving S. kInfinity if v is not
/// reachable.
int s_distance(std::span<const EdgePair> edges, int n, std::span<const char> in_s, VertexId u,
               VertexId v);

/// S-distances from `source` to every vertex (reverse = distances *to* source).
std::vector<int> s_distances(std::span<const EdgePair> edges, int n, std::span<const char> in_s,
                             VertexId source, bool reverse = false);

bool reachable(std::span<const EdgePair> edges, int n, VertexId u, VertexId v);
std::vector<char> reachable_from(std::span<const EdgePair> edges, int n, VertexId u);

/// Transitive closure (reflexive) as an n x n row-major matrix.
std::vector<char> closure(std::span<const EdgePair> edges, int n);

/// Kahn's algorithm.
bool is_acyclic(std::span<const EdgePair> edges, int n);

}  // namespace dscc::oracle

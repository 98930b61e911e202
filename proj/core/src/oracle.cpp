#include "dscc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace dscc::oracle {
namespace {

std::vector<std::vector<VertexId>> adjacency(std::span<const EdgePair> edges, int n,
                                             bool reverse = false) {
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [u, v] : edges) {
    if (reverse) {
      adj[v].push_back(u);
    } else {
      adj[u].push_back(v);
    }
  }
  return adj;
}

}  // namespace

SccPartition tarjan_scc(std::span<const EdgePair> edges, int n) {
  const auto adj = adjacency(edges, n);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::pair<VertexId, std::size_t>> call;  // vertex, next child
  SccPartition out;
  out.label.assign(n, -1);
  int counter = 0;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < adj[v].size()) {
        const VertexId w = adj[v][next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const VertexId done = v;
      call.pop_back();
      if (!call.empty()) {
        const VertexId parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<VertexId> comp;
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.label[w] = out.count();
          comp.push_back(w);
        } while (w != done);
        out.components.push_back(std::move(comp));
      }
    }
  }
  return out;
}

std::vector<char> closure(std::span<const EdgePair> edges, int n) {
  std::vector<char> reach(static_cast<std::size_t>(n) * n, 0);
  for (int v = 0; v < n; ++v) reach[static_cast<std::size_t>(v) * n + v] = 1;
  for (const auto& [u, v] : edges) reach[static_cast<std::size_t>(u) * n + v] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!reach[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (reach[static_cast<std::size_t>(k) * n + j]) reach[static_cast<std::size_t>(i) * n + j] = 1;
      }
    }
  }
  return reach;
}

SccPartition closure_scc(std::span<const EdgePair> edges, int n) {
  const auto reach = closure(edges, n);
  SccPartition out;
  out.label.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (out.label[v] != -1) continue;
    std::vector<VertexId> comp;
    for (int w = v; w < n; ++w) {
      if (reach[static_cast<std::size_t>(v) * n + w] && reach[static_cast<std::size_t>(w) * n + v]) {
        out.label[w] = out.count();
        comp.push_back(w);
      }
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

bool same_partition(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) return false;
  std::unordered_map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [it1, new1] = ab.try_emplace(a[i], b[i]);
    auto [it2, new2] = ba.try_emplace(b[i], a[i]);
    if (it1->second != b[i] || it2->second != a[i]) return false;
  }
  return true;
}

std::vector<int> s_distances(std::span<const EdgePair> edges, int n, std::span<const char> in_s,
                             VertexId source, bool reverse) {
  const auto adj = adjacency(edges, n, reverse);
  std::vector<int> dist(n, kInfinity);
  std::deque<VertexId> dq;
  dist[source] = 0;
  dq.push_back(source);
  while (!dq.empty()) {
    const VertexId x = dq.front();
    dq.pop_front();
    for (VertexId y : adj[x]) {
      // Original orientation of the edge is tail -> head; its weight is S(tail).
      const VertexId tail = reverse ? y : x;
      const int w = in_s[tail] ? 1 : 0;
      if (dist[x] + w < dist[y]) {
        dist[y] = dist[x] + w;
        if (w == 0) {
          dq.push_front(y);
        } else {
          dq.push_back(y);
        }
      }
    }
  }
  return dist;
}

int s_distance(std::span<const EdgePair> edges, int n, std::span<const char> in_s, VertexId u,
               VertexId v) {
  return s_distances(edges, n, in_s, u)[v];
}

std::vector<char> reachable_from(std::span<const EdgePair> edges, int n, VertexId u) {
  const auto adj = adjacency(edges, n);
  std::vector<char> seen(n, 0);
  std::vector<VertexId> queue{u};
  seen[u] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (VertexId w : adj[queue[head]]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

bool reachable(std::span<const EdgePair> edges, int n, VertexId u, VertexId v) {
  return reachable_from(edges, n, u)[v] != 0;
}

bool is_acyclic(std::span<const EdgePair> edges, int n) {
  std::vector<int> indeg(n, 0);
  const auto adj = adjacency(edges, n);
  for (const auto& [u, v] : edges) ++indeg[v];
  std::vector<VertexId> queue;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (VertexId w : adj[queue[head]]) {
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  return static_cast<int>(queue.size()) == n;
}

}  // namespace dscc::oracle

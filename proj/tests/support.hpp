#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "dscc/oracle.hpp"
#include "dscc/types.hpp"

namespace dscc::testing {

inline std::vector<EdgePair> random_edges(std::mt19937_64& rng, int n, int m,
                                          bool allow_loops = false) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<EdgePair> edges;
  while (static_cast<int>(edges.size()) < m) {
    const int u = pick(rng);
    const int v = pick(rng);
    if (u == v && !allow_loops) {
      if (n == 1) break;
      continue;
    }
    edges.emplace_back(u, v);
  }
  return edges;
}

// A Hamiltonian cycle plus random chords: strongly connected by construction.
inline std::vector<EdgePair> cycle_with_chords(std::mt19937_64& rng, int n, int chords) {
  std::vector<EdgePair> edges;
  for (int v = 0; v < n && n > 1; ++v) edges.emplace_back(v, (v + 1) % n);
  auto more = random_edges(rng, n, chords);
  edges.insert(edges.end(), more.begin(), more.end());
  return edges;
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  std::shuffle(v.begin(), v.end(), rng);
}

// Random subset of the vertices, completed greedily until every cycle (self
// loops aside) contains a member. Returned as a 0/1 mask.
inline std::vector<char> random_feedback_set(std::mt19937_64& rng, int n,
                                             const std::vector<EdgePair>& edges, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<char> in_s(n, 0);
  for (int v = 0; v < n; ++v) in_s[v] = coin(rng) ? 1 : 0;
  for (;;) {
    std::vector<EdgePair> rest;
    for (auto [u, v] : edges) {
      if (u != v && !in_s[u]) rest.emplace_back(u, v);
    }
    const auto scc = oracle::tarjan_scc(rest, n);
    bool changed = false;
    for (const auto& comp : scc.components) {
      if (comp.size() < 2) continue;
      std::uniform_int_distribution<std::size_t> pick(0, comp.size() - 1);
      in_s[comp[pick(rng)]] = 1;
      changed = true;
    }
    if (!changed) return in_s;
  }
}

}  // namespace dscc::testing

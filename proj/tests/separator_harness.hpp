#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dscc/multigraph.hpp"
#include "dscc/oracle.hpp"
#include "dscc/separator.hpp"
#include "support.hpp"

namespace dscc::testing {

// A singleton-partition level graph with a feedback-valid S, so node ids and
// vertex ids are interchangeable through node_of/members.
struct SepInstance {
  int n = 0;
  std::vector<EdgePair> edges;
  std::vector<char> in_s;
  std::shared_ptr<LevelGraph> g;
};

inline SepInstance make_sep_instance(std::mt19937_64& rng, int max_n) {
  SepInstance inst;
  inst.n = 2 + static_cast<int>(rng() % (max_n - 1));
  const int n = inst.n;
  if (rng() % 2 == 0) {
    inst.edges = cycle_with_chords(rng, n, static_cast<int>(rng() % (2 * n + 1)));
  } else {
    inst.edges = random_edges(rng, n, static_cast<int>(rng() % (3 * n + 1)), true);
  }
  const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  inst.in_s = random_feedback_set(rng, n, inst.edges, p);
  inst.g = std::make_shared<LevelGraph>(LevelGraph::build(n, inst.edges));
  for (int v = 0; v < n; ++v) {
    if (inst.in_s[v]) inst.g->add_feedback(inst.g->node_of(v));
  }
  return inst;
}

inline std::vector<char> node_mask(const LevelGraph& g, int n, std::span<const NodeId> nodes) {
  std::vector<char> mask(n, 0);
  for (NodeId x : nodes) {
    for (VertexId v : g.members(x)) mask[v] = 1;
  }
  return mask;
}

// Edges of the instance that survive removing every edge incident to `cut`.
inline std::vector<EdgePair> without_incident(const std::vector<EdgePair>& edges,
                                              const std::vector<char>& cut) {
  std::vector<EdgePair> out;
  for (auto [u, v] : edges) {
    if (!cut[u] && !cut[v]) out.emplace_back(u, v);
  }
  return out;
}

// The four properties of a balanced separator, for a separator run on
// the whole instance with the given root, direction and depth.
inline std::string check_separator(const SepInstance& inst, VertexId root, Direction dir, int d,
                                   const SeparatorResult& r, bool check_size = true) {
  const LevelGraph& g = *inst.g;
  const int n = inst.n;
  std::ostringstream err;
  const auto v_mask = node_mask(g, n, r.v_sep);
  const auto s_mask = node_mask(g, n, r.s_sep);
  // 1. S_sep inside S, disjoint from V_sep, root in V_sep.
  for (int v = 0; v < n; ++v) {
    if (s_mask[v] && !inst.in_s[v]) err << "cut vertex " << v << " not in S; ";
    if (s_mask[v] && v_mask[v]) err << "vertex " << v << " on both sides; ";
  }
  if (!v_mask[root]) err << "root not in V_sep; ";
  // 2. Everything in V_sep and S_sep within distance d of the root.
  const auto dist = oracle::s_distances(inst.edges, n, inst.in_s, root, dir == Direction::kIn);
  for (int v = 0; v < n; ++v) {
    if ((v_mask[v] || s_mask[v]) && dist[v] > d) {
      err << "vertex " << v << " at distance " << dist[v] << " > " << d << "; ";
    }
  }
  // 3. Size bound against the S-count of both sides.
  if (check_size) {
    std::int64_t s_in_v = 0, s_rest = 0;
    for (int v = 0; v < n; ++v) {
      if (!inst.in_s[v]) continue;
      if (v_mask[v]) {
        ++s_in_v;
      } else if (!s_mask[v]) {
        ++s_rest;
      }
    }
    const double bound =
        static_cast<double>(std::min(s_in_v, s_rest)) * 2.0 * std::log2(static_cast<double>(n)) / d;
    if (static_cast<double>(r.s_sep.size()) > bound + 1e-9) {
      err << "|S_sep|=" << r.s_sep.size() << " exceeds " << bound << "; ";
    }
  }
  // 4. No path from V_sep to the far side once S_sep's edges are gone.
  const auto cut_edges = without_incident(inst.edges, s_mask);
  for (int x = 0; x < n; ++x) {
    if (!v_mask[x]) continue;
    std::vector<EdgePair> e = cut_edges;
    if (dir == Direction::kIn) {
      for (auto& [a, b] : e) std::swap(a, b);
    }
    const auto reach = oracle::reachable_from(e, n, x);
    for (int y = 0; y < n; ++y) {
      if (reach[y] && !v_mask[y] && !s_mask[y]) {
        err << "V_sep vertex " << x << " still reaches " << y << "; ";
        return err.str();
      }
    }
  }
  return err.str();
}

inline double split_size_bound(const SepInstance& inst, const SplitResult& r, int d) {
  const double n = inst.n;
  double sum = 0;
  for (const auto& part : r.partition) {
    double s = 0;
    for (NodeId x : part) {
      for (VertexId v : inst.g->members(x)) s += inst.in_s[v];
    }
    if (s > 0 && n - s >= 1) sum += std::log2(n - s) * s;
  }
  return 32.0 * std::log2(n) / d * sum;
}

// The three properties of a Split result. `check_size` toggles the third.
inline std::string check_split(const SepInstance& inst, const SplitResult& r, int d,
                               bool check_size = true) {
  const LevelGraph& g = *inst.g;
  const int n = inst.n;
  std::ostringstream err;
  std::vector<int> part_of(n, -1);
  for (std::size_t p = 0; p < r.partition.size(); ++p) {
    for (NodeId x : r.partition[p]) {
      for (VertexId v : g.members(x)) {
        if (part_of[v] != -1) err << "vertex " << v << " in two parts; ";
        part_of[v] = static_cast<int>(p);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (part_of[v] == -1) err << "vertex " << v << " in no part; ";
  }
  if (!err.str().empty()) return err.str();
  const auto s_mask = node_mask(g, n, r.s_split);
  for (int v = 0; v < n; ++v) {
    if (s_mask[v] && !inst.in_s[v]) err << "separator vertex " << v << " not in S; ";
  }
  const auto rest = without_incident(inst.edges, s_mask);
  // 1. S-diameter at most d inside every part.
  for (int u = 0; u < n; ++u) {
    const auto dist = oracle::s_distances(rest, n, inst.in_s, u);
    for (int v = 0; v < n; ++v) {
      if (part_of[u] == part_of[v] && dist[v] > d) {
        err << "vertices " << u << "," << v << " of one part at distance " << dist[v] << "; ";
        return err.str();
      }
    }
  }
  // 2. Different parts are not strongly connected to each other.
  const auto scc = oracle::tarjan_scc(rest, n);
  for (const auto& comp : scc.components) {
    for (VertexId v : comp) {
      if (part_of[v] != part_of[comp[0]]) {
        err << "vertices " << comp[0] << "," << v << " strongly connected across parts; ";
        return err.str();
      }
    }
  }
  // 3. Separator size.
  if (check_size) {
    const double bound = split_size_bound(inst, r, d);
    if (static_cast<double>(r.s_split.size()) > bound + 1e-9) {
      err << "|S_split|=" << r.s_split.size() << " exceeds " << bound << "; ";
    }
  }
  return err.str();
}

// Smallest depth for which the layer counting argument goes through:
// 2 lg n / d <= 1 with room for the two empty ends.
inline int separator_min_depth(int n) {
  return 4 * static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max(n, 2))))) + 4;
}

}  // namespace dscc::testing

#include "dscc/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "dscc/oracle.hpp"

namespace dscc {

int auto_delta(int n) {
  const double lg = std::log2(static_cast<double>(std::max(n, 1)));
  return std::max(2, static_cast<int>(std::ceil(64.0 * lg * lg)));
}

std::uint64_t HierarchyStats::total_work() const {
  std::uint64_t w = 0;
  for (const auto& l : levels) {
    w += l.ges.edge_scans + l.split_edge_scans + l.separator_edge_scans + l.edge_moves;
  }
  return w;
}

Hierarchy::Hierarchy(int n, std::shared_ptr<EdgeStore> store, int user_edges, VertexId source,
                     HierarchyOptions opts)
    : n_(n),
      delta_(opts.delta == 0 ? auto_delta(n) : opts.delta),
      top_(static_cast<int>(std::floor(std::log2(static_cast<double>(n)))) + 1),
      user_edges_(user_edges),
      source_(source),
      opts_(opts),
      store_(std::move(store)),
      rng_(opts.seed) {
  if (opts.delta != 0 && opts.delta < 2) throw InputError("delta must be at least 2");
}

Hierarchy::Hierarchy(Hierarchy&&) noexcept = default;
Hierarchy& Hierarchy::operator=(Hierarchy&&) noexcept = default;
Hierarchy::~Hierarchy() = default;

Hierarchy Hierarchy::new_scc(int n, std::span<const EdgePair> edges, HierarchyOptions opts) {
  auto store = std::make_shared<EdgeStore>(n, edges);
  Hierarchy h(n, std::move(store), static_cast<int>(edges.size()), kNone, opts);
  h.build();
  return h;
}

Hierarchy Hierarchy::new_ssr(int n, std::span<const EdgePair> edges, VertexId source,
                             HierarchyOptions opts) {
  if (n < 1) throw InputError("vertex count must be positive");
  if (source < 0 || source >= n) throw InputError("source out of range");
  std::vector<EdgePair> all(edges.begin(), edges.end());
  for (VertexId v = 0; v < n; ++v) {
    if (v != source) all.emplace_back(v, source);
  }
  auto store = std::make_shared<EdgeStore>(n, all);
  Hierarchy h(n, std::move(store), static_cast<int>(edges.size()), source, opts);
  h.build();
  return h;
}

GesOptions Hierarchy::ges_options(int level) const {
  GesOptions o;
  o.verify = opts_.verify;
  // The last cascading level keeps exact reachability so that the top level is
  // the true condensation whatever delta is.
  o.cap_tracks_feedback = level == top_ - 1;
  return o;
}

std::vector<VertexId> Hierarchy::flatten(int level, std::span<const NodeId> nodes) const {
  std::vector<VertexId> out;
  for (NodeId x : nodes) {
    const auto m = graph_[level]->members(x);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

void Hierarchy::build() {
  const int k = top_ - 1;
  graph_.push_back(std::make_unique<LevelGraph>(store_));
  for (NodeId x = 0; x < graph_[0]->node_capacity(); ++x) graph_[0]->add_feedback(x);
  for (int i = 0; i < top_; ++i) slots_.push_back(std::make_unique<GesSlots>());
  trees_.resize(top_);
  worklist_.resize(top_);
  level_stats_.resize(top_ + 1);

  const auto blocks = oracle::tarjan_scc(store_->alive_edges(), n_);
  std::vector<std::vector<NodeId>> groups(blocks.count());
  for (VertexId v = 0; v < n_; ++v) groups[blocks.label[v]].push_back(graph_[0]->node_of(v));

  for (int i = 0; i <= k; ++i) {
    LevelGraph& g = *graph_[i];
    std::vector<std::vector<NodeId>> parts;
    std::vector<NodeId> seps;
    for (const auto& group : groups) {
      if (group.size() == 1) {
        parts.push_back(group);
        continue;
      }
      if (i < k) {
        SplitResult sr = split(g, *slots_[i], group, std::max(1, delta_ / 2), n_);
        level_stats_[i].split_edge_scans += sr.stats.separator_edge_scans + sr.stats.ges_edge_scans;
        level_stats_[i].center_fallbacks += sr.stats.center_fallbacks;
        seps.insert(seps.end(), sr.s_split.begin(), sr.s_split.end());
        for (auto& p : sr.partition) parts.push_back(std::move(p));
      } else {
        for (auto& p : components(i, group)) parts.push_back(std::move(p));
      }
    }
    init_partition(i, parts);

    std::vector<int> label(n_);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      for (NodeId x : parts[p]) {
        for (VertexId v : g.members(x)) label[v] = static_cast<int>(p);
      }
    }
    graph_.push_back(std::make_unique<LevelGraph>(store_, label));
    LevelGraph& up = *graph_[i + 1];
    for (NodeId s : seps) up.add_feedback(up.node_of(g.members(s)[0]));

    std::vector<std::vector<NodeId>> next(blocks.count());
    for (const auto& p : parts) {
      const VertexId v = g.members(p[0])[0];
      next[blocks.label[v]].push_back(up.node_of(v));
    }
    groups = std::move(next);
  }
  for (int i = 0; i <= k; ++i) process_level(i);
}

GesTree& Hierarchy::make_tree(int level, ViewId vid, std::span<const NodeId> nodes) {
  LevelGraph& g = *graph_[level];
  std::int64_t total = 0;
  for (NodeId x : nodes) total += g.flatten_size(x);
  std::uniform_int_distribution<std::int64_t> pick(0, total - 1);
  std::int64_t r = pick(rng_);
  VertexId center = kNone;
  for (NodeId x : nodes) {
    if (r < g.flatten_size(x)) {
      center = g.members(x)[static_cast<std::size_t>(r)];
      break;
    }
    r -= g.flatten_size(x);
  }
  auto tree = std::make_unique<GesTree>(g.view(vid), *slots_[level], center, delta_, nodes,
                                        ges_options(level));
  GesTree& ref = *tree;
  trees_[level][vid] = std::move(tree);
  ++level_stats_[level].ges_inits;
  worklist_[level].push_back(vid);
  return ref;
}

void Hierarchy::init_partition(int level, std::span<const std::vector<NodeId>> parts) {
  LevelGraph& g = *graph_[level];
  for (const auto& part : parts) {
    const ViewId vid = g.new_view_id();
    for (NodeId x : part) g.set_view(x, vid);
    if (part.size() >= 2) make_tree(level, vid, part);
  }
}

GesTree* Hierarchy::tree_for(int level, NodeId x) {
  const ViewId vid = graph_[level]->view_of(x);
  if (vid == kNoView) throw InternalError("hierarchy: node outside every view");
  auto it = trees_[level].find(vid);
  if (it != trees_[level].end()) return it->second.get();
  // Single-node views carry no tree until something splits them.
  const NodeId only[] = {x};
  return &make_tree(level, vid, only);
}

void Hierarchy::retire_tree(int level, ViewId vid) {
  auto it = trees_[level].find(vid);
  level_stats_[level].ges += it->second->counters();
  ++level_stats_[level].trees_destroyed;
  trees_[level].erase(it);
}

std::vector<std::vector<NodeId>> Hierarchy::components(int level,
                                                       std::span<const NodeId> nodes) {
  LevelGraph& g = *graph_[level];
  const View view = g.induced_view(nodes);
  std::unordered_map<NodeId, int> index;
  index.reserve(nodes.size());
  for (NodeId x : nodes) index.emplace(x, static_cast<int>(index.size()));
  std::vector<EdgePair> edges;
  for (NodeId x : nodes) {
    for (EdgeId e : g.out_edges(x)) {
      ++level_stats_[level].separator_edge_scans;
      if (view.edge_in(e)) edges.emplace_back(index[x], index[g.head(e)]);
    }
  }
  const auto scc = oracle::tarjan_scc(edges, static_cast<int>(nodes.size()));
  std::vector<std::vector<NodeId>> out(scc.count());
  for (std::size_t j = 0; j < nodes.size(); ++j) out[scc.label[j]].push_back(nodes[j]);
  return out;
}

void Hierarchy::process_level(int level) {
  auto& work = worklist_[level];
  while (!work.empty()) {
    const ViewId vid = work.back();
    work.pop_back();
    auto it = trees_[level].find(vid);
    if (it == trees_[level].end()) continue;
    GesTree& tree = *it->second;
    tree.repair();
    const NodeId x = tree.get_unreachable();
    if (x == kNone) continue;
    if (level == top_ - 1) {
      handle_top(level, tree);
    } else {
      handle(level, tree, x);
    }
    if (trees_[level].count(vid)) work.push_back(vid);
  }
}

void Hierarchy::handle(int level, GesTree& tree, NodeId unreachable) {
  LevelGraph& g = *graph_[level];
  LevelStats& st = level_stats_[level];
  const ViewId vid = tree.view_id();
  const int d = std::max(1, delta_ / 2);
  const bool far_from_center = tree.distance_from(unreachable) == kInfinity;
  SeparatorResult sep =
      far_from_center
          ? in_separator(tree.view(), unreachable, d, tree.feedback_count(), n_)
          : out_separator(tree.view(), unreachable, d, tree.feedback_count(), n_);
  st.separator_edge_scans += sep.edges_touched;

  std::vector<NodeId> victims = sep.v_sep;
  victims.insert(victims.end(), sep.s_sep.begin(), sep.s_sep.end());
  const NodeId center = tree.center_node();
  const bool center_hit = std::find(victims.begin(), victims.end(), center) != victims.end();
  if (center_hit) ++st.center_fallbacks;

  std::vector<std::vector<NodeId>> parts;
  std::vector<NodeId> seps;
  std::size_t keep = std::numeric_limits<std::size_t>::max();
  if (!center_hit && 3 * sep.v_flatten <= 2 * tree.flatten_size()) {
    tree.delete_nodes(victims);
    SplitResult sr = split(g, *slots_[level], sep.v_sep, d, n_);
    st.split_edge_scans += sr.stats.separator_edge_scans + sr.stats.ges_edge_scans;
    st.center_fallbacks += sr.stats.center_fallbacks;
    parts = std::move(sr.partition);
    seps = std::move(sr.s_split);
    for (NodeId s : sep.s_sep) {
      parts.push_back({s});
      seps.push_back(s);
    }
  } else {
    const std::vector<NodeId> all = tree.get_all_nodes();
    const std::int64_t init_flatten = tree.init_flatten();
    retire_tree(level, vid);
    SplitResult sr = split(g, *slots_[level], all, d, n_);
    st.split_edge_scans += sr.stats.separator_edge_scans + sr.stats.ges_edge_scans;
    st.center_fallbacks += sr.stats.center_fallbacks;
    parts = std::move(sr.partition);
    seps = std::move(sr.s_split);
    std::int64_t best = -1;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      std::int64_t f = 0;
      for (NodeId x : parts[p]) f += g.flatten_size(x);
      if (f > best) {
        best = f;
        keep = p;
      }
    }
    root_shrink_.push_back(static_cast<double>(best) / static_cast<double>(init_flatten));
  }
  init_partition(level, parts);
  propagate(level, parts, keep, seps);
}

void Hierarchy::handle_top(int level, GesTree& tree) {
  LevelGraph& g = *graph_[level];
  const ViewId vid = tree.view_id();
  std::vector<NodeId> victims = tree.take_unreachable();
  if (victims.empty()) return;
  std::int64_t flat = 0;
  for (NodeId x : victims) flat += g.flatten_size(x);

  std::vector<std::vector<NodeId>> parts;
  std::size_t keep = std::numeric_limits<std::size_t>::max();
  if (3 * flat <= 2 * tree.flatten_size()) {
    tree.delete_nodes(victims);
    parts = components(level, victims);
  } else {
    const std::vector<NodeId> all = tree.get_all_nodes();
    const std::int64_t init_flatten = tree.init_flatten();
    retire_tree(level, vid);
    parts = components(level, all);
    std::int64_t best = -1;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      std::int64_t f = 0;
      for (NodeId x : parts[p]) f += g.flatten_size(x);
      if (f > best) {
        best = f;
        keep = p;
      }
    }
    root_shrink_.push_back(static_cast<double>(best) / static_cast<double>(init_flatten));
  }
  init_partition(level, parts);
  propagate(level, parts, keep, {});
}

void Hierarchy::propagate(int level, std::span<const std::vector<NodeId>> parts,
                          std::size_t keep, std::span<const NodeId> separators) {
  if (parts.empty()) return;
  const int up_level = level + 1;
  LevelGraph& g = *graph_[level];
  LevelGraph& up = *graph_[up_level];
  NodeId y = up.node_of(g.members(parts[0][0])[0]);
  GesTree* tree = up_level < top_ ? tree_for(up_level, y) : nullptr;

  // All splits first, then a single augment: the new feedback nodes must be
  // single-vertex nodes by the time they are added.
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (p == keep) continue;
    const std::vector<VertexId> verts = flatten(level, parts[p]);
    if (static_cast<int>(verts.size()) == up.flatten_size(y)) continue;
    const NodeSplit r = tree ? tree->split_node(y, verts, false) : up.split_node(y, verts);
    y = r.rest;
  }
  std::vector<NodeId> fb;
  fb.reserve(separators.size());
  for (NodeId s : separators) fb.push_back(up.node_of(g.members(s)[0]));
  if (tree) {
    tree->augment(fb, false);
    tree->repair();
    worklist_[up_level].push_back(tree->view_id());
  } else {
    for (NodeId x : fb) up.add_feedback(x);
  }
}

void Hierarchy::remove_edge(EdgeId e) {
  store_->kill(e);
  ++deletions_;
  // The edge leaves every level before any level is processed, otherwise a
  // split pushed up from below would see a stale edge above.
  for (int i = 0; i <= top_; ++i) {
    LevelGraph& g = *graph_[i];
    const NodeId a = g.tail(e);
    const NodeId b = g.head(e);
    const ViewId vid = g.view_of(a);
    const bool inside =
        i < top_ && a != b && vid != kNoView && vid == g.view_of(b) && g.has_edge(e);
    g.unlink_edge(e);
    if (inside) {
      auto it = trees_[i].find(vid);
      if (it == trees_[i].end()) throw InternalError("hierarchy: view without tree");
      it->second->edge_removed(e);
      worklist_[i].push_back(vid);
    }
  }
  for (int i = 0; i < top_; ++i) process_level(i);
}

void Hierarchy::delete_edge(VertexId u, VertexId v) {
  if (!store_->valid_vertex(u) || !store_->valid_vertex(v)) {
    throw InputError("delete: vertex out of range");
  }
  const EdgeId e = store_->find_alive(u, v);
  if (e == kNone || e >= user_edges_) {
    throw InputError("delete: no edge " + std::to_string(u) + " -> " + std::to_string(v));
  }
  remove_edge(e);
}

void Hierarchy::delete_edge_id(EdgeId e) {
  if (e < 0 || e >= user_edges_ || !store_->alive(e)) {
    throw InputError("delete: edge " + std::to_string(e) + " is not an alive edge");
  }
  remove_edge(e);
}

bool Hierarchy::edge_alive(EdgeId e) const {
  return e >= 0 && e < user_edges_ && store_->alive(e);
}

bool Hierarchy::same_scc(VertexId u, VertexId v) const {
  if (!store_->valid_vertex(u) || !store_->valid_vertex(v)) {
    throw InputError("query: vertex out of range");
  }
  const LevelGraph& top = *graph_[top_];
  return top.node_of(u) == top.node_of(v);
}

NodeId Hierarchy::scc_id(VertexId u) const {
  if (!store_->valid_vertex(u)) throw InputError("query: vertex out of range");
  return graph_[top_]->node_of(u);
}

bool Hierarchy::reaches(VertexId v) const {
  if (!is_ssr()) throw ContractViolation("reaches: structure was not built with new_ssr");
  return same_scc(source_, v);
}

std::int64_t Hierarchy::s_set_size(int level) const {
  if (level < 0 || level > top_ + 1) throw ContractViolation("s_set_size: bad level");
  if (level == top_ + 1) return 0;
  return graph_[level]->feedback_count();
}

std::vector<int> Hierarchy::scc_labels() const {
  std::vector<int> out(n_);
  for (VertexId v = 0; v < n_; ++v) out[v] = graph_[top_]->node_of(v);
  return out;
}

HierarchyStats Hierarchy::stats() const {
  HierarchyStats s;
  s.levels = level_stats_;
  for (int i = 0; i <= top_; ++i) {
    LevelStats& l = s.levels[i];
    if (i < top_) {
      for (const auto& [vid, tree] : trees_[i]) l.ges += tree->counters();
      l.scc_count = graph_[i + 1]->node_count();
    }
    l.edge_moves = graph_[i]->edge_moves();
    l.s_size = graph_[i]->feedback_count();
  }
  s.root_shrink_ratios = root_shrink_;
  s.deletions = deletions_;
  return s;
}

std::string Hierarchy::check_invariants() const {
  for (int i = 0; i < top_; ++i) {
    const LevelGraph& g = *graph_[i];
    const LevelGraph& up = *graph_[i + 1];
    const std::string at = " at level " + std::to_string(i);
    std::unordered_map<ViewId, NodeId> view_to_up;
    std::unordered_map<NodeId, ViewId> up_to_view;
    std::unordered_map<ViewId, int> view_size;
    for (NodeId x : g.nodes()) {
      const auto m = g.members(x);
      const NodeId u = up.node_of(m[0]);
      for (VertexId v : m) {
        if (up.node_of(v) != u) return "node splits across the level above" + at;
      }
      const ViewId vid = g.view_of(x);
      if (vid == kNoView) return "node outside every view" + at;
      ++view_size[vid];
      auto [it1, new1] = view_to_up.try_emplace(vid, u);
      auto [it2, new2] = up_to_view.try_emplace(u, vid);
      if (it1->second != u || it2->second != vid) {
        return "views and upper nodes are not in bijection" + at;
      }
    }
    for (const auto& [vid, count] : view_size) {
      if (count >= 2 && !trees_[i].count(vid)) return "multi-node view without a tree" + at;
    }
    for (const auto& [vid, tree] : trees_[i]) {
      if (!view_size.count(vid)) return "tree without nodes" + at;
    }
    for (NodeId x : up.nodes()) {
      if (up.is_feedback(x) && !g.vertex_in_feedback(up.members(x)[0])) {
        return "S sets not nested" + at;
      }
    }
    // S_i must be a feedback node set of this level.
    std::unordered_map<NodeId, int> index;
    for (NodeId x : g.nodes()) index.emplace(x, static_cast<int>(index.size()));
    std::vector<EdgePair> edges;
    for (NodeId x : g.nodes()) {
      if (g.is_feedback(x)) continue;
      for (EdgeId e : g.out_edges(x)) {
        const NodeId y = g.head(e);
        if (y != x) edges.emplace_back(index[x], index[y]);
      }
    }
    if (!oracle::is_acyclic(edges, static_cast<int>(index.size()))) {
      return "feedback set misses a cycle" + at;
    }
  }
  return {};
}

}  // namespace dscc

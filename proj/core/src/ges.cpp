#include "dscc/ges.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace dscc {

void GesSlots::ensure(int capacity) {
  if (static_cast<int>(pos.size()) >= capacity) return;
  for (int d = 0; d < 2; ++d) {
    level[d].resize(capacity, kInfinity);
    parent[d].resize(capacity, kNone);
    cand[d].resize(capacity);
    queued[d].resize(capacity, 0);
  }
  pos.resize(capacity, kNone);
}

GesTree::GesTree(View view, GesSlots& slots, VertexId center, int depth_cap,
                 std::span<const NodeId> nodes, GesOptions options)
    : view_(view), g_(view.graph), s_(&slots), center_(center), cap_(depth_cap), opt_(options) {
  if (depth_cap < 1) throw ContractViolation("GesTree: depth cap must be at least 1");
  if (!g_->store().valid_vertex(center)) throw ContractViolation("GesTree: bad center vertex");
  s_->ensure(g_->node_capacity());
  nodes_.reserve(nodes.size());
  for (NodeId x : nodes) {
    if (!g_->node_alive(x) || !view_.contains(x)) {
      throw ContractViolation("GesTree: node not in view");
    }
    add_node(x);
  }
  if (!view_.contains(center_node())) throw ContractViolation("GesTree: center not in view");
  init_flatten_ = flatten_size_;
  init_tree(0);
  init_tree(1);
}

void GesTree::add_node(NodeId x) {
  s_->pos[x] = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(x);
  flatten_size_ += g_->flatten_size(x);
  if (g_->is_feedback(x)) ++feedback_count_;
}

void GesTree::remove_node(NodeId x) {
  const std::int32_t p = s_->pos[x];
  const NodeId last = nodes_.back();
  nodes_[p] = last;
  s_->pos[last] = p;
  nodes_.pop_back();
  s_->pos[x] = kNone;
  flatten_size_ -= g_->flatten_size(x);
  if (g_->is_feedback(x)) --feedback_count_;
  g_->set_view(x, kNoView);
  for (int d = 0; d < 2; ++d) {
    count_level(d, s_->level[d][x], -1);
    s_->queued[d][x] = 0;
    s_->cand[d][x].clear();
  }
}

void GesTree::require_node(NodeId x) const {
  if (!g_->node_alive(x) || !view_.contains(x)) {
    throw ContractViolation("GesTree: stale or foreign node");
  }
}

int GesTree::effective_cap() const {
  return opt_.cap_tracks_feedback ? std::max(cap_, feedback_count_) : cap_;
}

NodeId GesTree::parent_side(int d, EdgeId e) const { return d == 0 ? g_->tail(e) : g_->head(e); }
NodeId GesTree::child_side(int d, EdgeId e) const { return d == 0 ? g_->head(e) : g_->tail(e); }
int GesTree::weight(EdgeId e) const { return g_->is_feedback(g_->tail(e)) ? 1 : 0; }

std::span<const EdgeId> GesTree::child_edges(int d, NodeId x) const {
  return d == 0 ? g_->out_edges(x) : g_->in_edges(x);
}

std::span<const EdgeId> GesTree::parent_edges(int d, NodeId x) const {
  return d == 0 ? g_->in_edges(x) : g_->out_edges(x);
}

int GesTree::distance_from(NodeId x) const {
  require_node(x);
  return s_->level[0][x];
}

int GesTree::distance_to(NodeId x) const {
  require_node(x);
  return s_->level[1][x];
}

int GesTree::level(Direction dir, NodeId x) const {
  require_node(x);
  return s_->level[static_cast<int>(dir)][x];
}

EdgeId GesTree::parent_edge(Direction dir, NodeId x) const {
  require_node(x);
  return s_->parent[static_cast<int>(dir)][x];
}

void GesTree::init_tree(int d) {
  auto& level = s_->level[d];
  auto& parent = s_->parent[d];
  for (NodeId x : nodes_) {
    level[x] = kInfinity;
    parent[x] = kNone;
    s_->queued[d][x] = 0;
    s_->cand[d][x].clear();
  }
  const int cap = effective_cap();
  const NodeId root = center_node();
  level[root] = 0;
  std::deque<NodeId> dq{root};
  while (!dq.empty()) {
    const NodeId x = dq.front();
    dq.pop_front();
    for (EdgeId e : child_edges(d, x)) {
      ++counters_.edge_scans;
      if (!view_.edge_in(e)) continue;
      const NodeId y = child_side(d, e);
      const int w = weight(e);
      const int nl = level[x] + w;
      if (nl > cap || nl >= level[y]) continue;
      level[y] = nl;
      parent[y] = e;
      if (w == 0) {
        dq.push_front(y);
      } else {
        dq.push_back(y);
      }
    }
  }
  at_level_[d].assign(1, 0);
  for (NodeId x : nodes_) {
    count_level(d, level[x], 1);
    if (level[x] == kInfinity) {
      unreachable_.push_back(x);
    } else {
      // The center gets candidates too: a split can hand the center vertex to
      // the other half and leave this list to the old node.
      refill(d, x);
    }
  }
}

void GesTree::refill(int d, NodeId x) {
  auto& c = s_->cand[d][x];
  c.clear();
  for (EdgeId e : parent_edges(d, x)) {
    ++counters_.edge_scans;
    if (parent_side(d, e) != x) c.push_back(e);
  }
}

void GesTree::enqueue(int d, NodeId x) {
  if (x == center_node()) return;
  const int lv = s_->level[d][x];
  if (lv == kInfinity || s_->queued[d][x]) return;
  s_->queued[d][x] = 1;
  auto& b = buckets_[d];
  if (b.size() <= static_cast<std::size_t>(lv)) b.resize(lv + 1);
  b[lv].push_back(x);
  cursor_[d] = std::min(cursor_[d], static_cast<std::size_t>(lv));
}

void GesTree::detach(int d, NodeId x) {
  s_->parent[d][x] = kNone;
  ++counters_.tree_edge_removals;
  enqueue(d, x);
}

void GesTree::detach_children(int d, NodeId x) {
  for (EdgeId e : child_edges(d, x)) {
    ++counters_.edge_scans;
    const NodeId c = child_side(d, e);
    if (c != x && view_.contains(c) && s_->parent[d][c] == e) detach(d, c);
  }
}

void GesTree::count_level(int d, int lv, int delta) {
  if (lv == kInfinity) return;
  auto& h = at_level_[d];
  if (h.size() <= static_cast<std::size_t>(lv)) h.resize(lv + 1, 0);
  h[lv] += delta;
}

void GesTree::mark_infinite(int d, NodeId x) {
  count_level(d, s_->level[d][x], -1);
  s_->level[d][x] = kInfinity;
  s_->parent[d][x] = kNone;
  s_->queued[d][x] = 0;
  s_->cand[d][x].clear();
  s_->cand[d][x].shrink_to_fit();
  unreachable_.push_back(x);
}

void GesTree::check_no_cycle(int d, NodeId x, NodeId p) const {
  NodeId cur = p;
  for (std::size_t steps = 0; cur != kNone && steps <= nodes_.size(); ++steps) {
    if (cur == x) {
      throw InternalError("GesTree: reconnection would close a 0-weight cycle; the feedback "
                          "set is not a feedback node set of the view");
    }
    const EdgeId e = s_->parent[d][cur];
    cur = e == kNone ? kNone : parent_side(d, e);
  }
}

bool GesTree::try_reconnect(int d, NodeId x, int l) {
  auto& c = s_->cand[d][x];
  const auto& level = s_->level[d];
  while (!c.empty()) {
    const EdgeId e = c.back();
    c.pop_back();
    ++counters_.edge_scans;
    if (!view_.edge_in(e) || child_side(d, e) != x) continue;
    const NodeId p = parent_side(d, e);
    // Levels never decrease, so a mismatch now is a mismatch for good at l.
    if (level[p] == kInfinity || level[p] + weight(e) != l) continue;
    if (opt_.verify) check_no_cycle(d, x, p);
    s_->parent[d][x] = e;
    return true;
  }
  return false;
}

void GesTree::fix(int d) {
  auto& b = buckets_[d];
  while (cursor_[d] < b.size()) {
    const std::size_t l = cursor_[d];
    if (b[l].empty()) {
      ++cursor_[d];
      continue;
    }
    const NodeId x = b[l].back();
    b[l].pop_back();
    if (!s_->queued[d][x] || !view_.contains(x) || s_->level[d][x] != static_cast<int>(l)) {
      continue;
    }
    s_->queued[d][x] = 0;
    if (s_->parent[d][x] != kNone || x == center_node()) continue;
    // Everything below l is settled and levels drop by at most one per tree
    // edge, so with no node at l - 1 nothing at l or above can reach the center.
    const bool stranded = l > 0 && at_level_[d][l - 1] == 0;
    if (!stranded && try_reconnect(d, x, static_cast<int>(l))) continue;

    detach_children(d, x);
    // A finite S-distance inside the view never exceeds the number of S nodes
    // in it, so climbing past that count only proves x unreachable slowly.
    if (stranded || static_cast<int>(l) + 1 > std::min(effective_cap(), feedback_count_)) {
      mark_infinite(d, x);
      continue;
    }
    count_level(d, static_cast<int>(l), -1);
    count_level(d, static_cast<int>(l) + 1, 1);
    s_->level[d][x] = static_cast<int>(l) + 1;
    ++counters_.level_increases;
    refill(d, x);
    enqueue(d, x);
  }
}

void GesTree::repair() {
  fix(0);
  fix(1);
}

void GesTree::edge_removed(EdgeId e) {
  for (int d = 0; d < 2; ++d) {
    const NodeId c = child_side(d, e);
    if (view_.contains(c) && s_->parent[d][c] == e) detach(d, c);
  }
}

void GesTree::delete_edge(EdgeId e) {
  if (!g_->store().valid_edge(e) || !view_.edge_in(e)) {
    throw ContractViolation("GesTree::delete_edge: edge not in view");
  }
  g_->unlink_edge(e);
  edge_removed(e);
  repair();
}

void GesTree::delete_nodes(std::span<const NodeId> victims, bool repair_now) {
  const NodeId center = center_node();
  for (NodeId x : victims) {
    require_node(x);
    if (x == center) throw ContractViolation("GesTree::delete_nodes: cannot delete the center");
  }
  for (NodeId x : victims) {
    if (view_.contains(x)) {
      remove_node(x);
      ++counters_.nodes_pruned;
    }
  }
  for (NodeId x : victims) {
    detach_children(0, x);
    detach_children(1, x);
  }
  if (repair_now) repair();
}

NodeSplit GesTree::split_node(NodeId y, std::span<const VertexId> part, bool repair_now) {
  require_node(y);
  const NodeSplit r = g_->split_node(y, part);
  s_->ensure(g_->node_capacity());
  const NodeId x = r.created;
  s_->pos[x] = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(x);
  const NodeId center = center_node();

  for (int d = 0; d < 2; ++d) {
    s_->level[d][x] = s_->level[d][y];
    count_level(d, s_->level[d][x], 1);
    s_->queued[d][x] = 0;
    s_->cand[d][x].clear();
    s_->parent[d][x] = kNone;
    const EdgeId pe = s_->parent[d][y];
    if (pe != kNone && child_side(d, pe) == x) {
      s_->parent[d][x] = pe;
      s_->parent[d][y] = kNone;
    }
    if (s_->level[d][x] == kInfinity) {
      unreachable_.push_back(x);
      continue;
    }
    refill(d, x);
    // Edges between the halves used to be self-loops of y and were never
    // candidates of the kept half.
    for (EdgeId e : child_edges(d, x)) {
      ++counters_.edge_scans;
      if (child_side(d, e) == y) s_->cand[d][y].push_back(e);
    }
    for (NodeId h : {x, y}) {
      if (h != center && s_->parent[d][h] == kNone) enqueue(d, h);
    }
  }
  if (repair_now) repair();
  return r;
}

void GesTree::augment(std::span<const NodeId> new_feedback, bool repair_now) {
  for (NodeId s : new_feedback) {
    require_node(s);
    if (g_->flatten_size(s) != 1) {
      throw ContractViolation("GesTree::augment: feedback nodes must be single-vertex nodes");
    }
  }
  for (NodeId s : new_feedback) {
    if (g_->is_feedback(s)) continue;
    g_->add_feedback(s);
    ++feedback_count_;
    // Out-tree: edges leaving s now cost 1. Children hanging on them lose
    // their parent, and edges dropped earlier as too cheap may now fit.
    for (EdgeId e : g_->out_edges(s)) {
      ++counters_.edge_scans;
      const NodeId c = g_->head(e);
      if (c == s || !view_.contains(c) || s_->level[0][c] == kInfinity) continue;
      s_->cand[0][c].push_back(e);
      if (s_->parent[0][c] == e) detach(0, c);
    }
    // In-tree: only s's own parent edge changes weight.
    if (s_->level[1][s] != kInfinity) {
      refill(1, s);
      if (s_->parent[1][s] != kNone) detach(1, s);
    }
  }
  if (repair_now) repair();
}

NodeId GesTree::get_unreachable() {
  while (!unreachable_.empty()) {
    const NodeId x = unreachable_.back();
    if (g_->node_alive(x) && view_.contains(x) &&
        (s_->level[0][x] == kInfinity || s_->level[1][x] == kInfinity)) {
      return x;
    }
    unreachable_.pop_back();
  }
  return kNone;
}

std::vector<NodeId> GesTree::take_unreachable() {
  std::vector<NodeId> out;
  std::unordered_set<NodeId> seen;
  for (NodeId x : unreachable_) {
    if (!g_->node_alive(x) || !view_.contains(x)) continue;
    if (s_->level[0][x] != kInfinity && s_->level[1][x] != kInfinity) continue;
    if (seen.insert(x).second) out.push_back(x);
  }
  unreachable_.clear();
  return out;
}

}  // namespace dscc

#include "dscc/multigraph.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace dscc {

LevelGraph LevelGraph::build(int n, std::span<const EdgePair> edges) {
  return LevelGraph(std::make_shared<EdgeStore>(n, edges));
}

LevelGraph::LevelGraph(std::shared_ptr<EdgeStore> store, std::span<const int> node_label)
    : store_(std::move(store)) {
  const int n = store_->vertex_count();
  if (!node_label.empty() && static_cast<int>(node_label.size()) != n) {
    throw ContractViolation("node label count must equal vertex count");
  }
  node_of_.assign(n, kNone);
  member_pos_.assign(n, 0);
  mark_.assign(n, 0);
  std::unordered_map<int, NodeId> label_to_node;
  for (VertexId v = 0; v < n; ++v) {
    NodeId x;
    if (node_label.empty()) {
      x = new_node();
    } else {
      auto [it, inserted] = label_to_node.try_emplace(node_label[v], kNone);
      if (inserted) it->second = new_node();
      x = it->second;
    }
    node_of_[v] = x;
    member_pos_[v] = static_cast<std::int32_t>(members_[x].size());
    members_[x].push_back(v);
  }
  live_nodes_ = node_capacity();
  out_pos_.assign(store_->edge_count(), kNone);
  in_pos_.assign(store_->edge_count(), kNone);
  for (EdgeId e = 0; e < store_->edge_count(); ++e) {
    if (store_->alive(e)) link(e);
  }
}

NodeId LevelGraph::new_node() {
  const auto x = static_cast<NodeId>(members_.size());
  members_.emplace_back();
  out_.emplace_back();
  in_.emplace_back();
  feedback_.push_back(0);
  view_.push_back(kNoView);
  return x;
}

std::vector<NodeId> LevelGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(live_nodes_);
  for (NodeId x = 0; x < node_capacity(); ++x) {
    if (!members_[x].empty()) out.push_back(x);
  }
  return out;
}

void LevelGraph::link(EdgeId e) {
  const NodeId a = tail(e);
  const NodeId b = head(e);
  out_pos_[e] = static_cast<std::int32_t>(out_[a].size());
  out_[a].push_back(e);
  in_pos_[e] = static_cast<std::int32_t>(in_[b].size());
  in_[b].push_back(e);
  ++linked_;
}

void LevelGraph::remove_at(std::vector<EdgeId>& list, std::vector<std::int32_t>& pos,
                           EdgeId e) {
  const std::int32_t p = pos[e];
  const EdgeId last = list.back();
  list[p] = last;
  pos[last] = p;
  list.pop_back();
  pos[e] = kNone;
}

void LevelGraph::unlink_edge(EdgeId e) {
  if (!store_->valid_edge(e)) throw ContractViolation("unlink_edge: bad edge id");
  if (!has_edge(e)) return;
  remove_at(out_[tail(e)], out_pos_, e);
  remove_at(in_[head(e)], in_pos_, e);
  --linked_;
}

NodeSplit LevelGraph::split_node(NodeId y, std::span<const VertexId> part) {
  if (!node_alive(y)) throw ContractViolation("split_node: stale node");
  const auto y_size = members_[y].size();
  if (part.empty()) throw ContractViolation("split_node: empty vertex set");
  if (part.size() >= y_size) throw ContractViolation("split_node: set must be a proper subset");
  if (++mark_stamp_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    mark_stamp_ = 1;
  }
  for (VertexId v : part) {
    if (!store_->valid_vertex(v) || node_of_[v] != y) {
      throw ContractViolation("split_node: vertex " + std::to_string(v) + " not in node");
    }
    if (mark_[v] == mark_stamp_) throw ContractViolation("split_node: duplicate vertex");
    mark_[v] = mark_stamp_;
  }

  const bool move_part = part.size() * 2 <= y_size;
  std::vector<VertexId> moving;
  if (move_part) {
    moving.assign(part.begin(), part.end());
  } else {
    moving.reserve(y_size - part.size());
    for (VertexId v : members_[y]) {
      if (mark_[v] != mark_stamp_) moving.push_back(v);
    }
  }

  const NodeId x = new_node();
  view_[x] = view_[y];
  ++live_nodes_;
  auto& ym = members_[y];
  for (VertexId v : moving) {
    const std::int32_t p = member_pos_[v];
    const VertexId last = ym.back();
    ym[p] = last;
    member_pos_[last] = p;
    ym.pop_back();
    member_pos_[v] = static_cast<std::int32_t>(members_[x].size());
    members_[x].push_back(v);
    node_of_[v] = x;
  }
  // node_of already points at x, but the edges still sit in y's lists.
  for (VertexId v : moving) {
    for (EdgeId e : store_->out_edges(v)) {
      if (out_pos_[e] == kNone) continue;
      remove_at(out_[y], out_pos_, e);
      out_pos_[e] = static_cast<std::int32_t>(out_[x].size());
      out_[x].push_back(e);
      ++edge_moves_;
    }
    for (EdgeId e : store_->in_edges(v)) {
      if (in_pos_[e] == kNone) continue;
      remove_at(in_[y], in_pos_, e);
      in_pos_[e] = static_cast<std::int32_t>(in_[x].size());
      in_[x].push_back(e);
      ++edge_moves_;
    }
  }
  return move_part ? NodeSplit{x, y, x} : NodeSplit{y, x, x};
}

void LevelGraph::add_feedback(NodeId x) {
  if (!node_alive(x)) throw ContractViolation("add_feedback: stale node");
  if (members_[x].size() != 1) {
    throw ContractViolation("add_feedback: feedback nodes must be single-vertex nodes");
  }
  if (feedback_[x]) return;
  feedback_[x] = 1;
  ++feedback_count_;
}

View LevelGraph::induced_view(std::span<const NodeId> nodes) {
  const ViewId id = new_view_id();
  for (NodeId x : nodes) {
    if (!node_alive(x)) throw ContractViolation("induced_view: stale node");
    view_[x] = id;
  }
  return View{this, id};
}

}  // namespace dscc

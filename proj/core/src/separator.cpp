#include "dscc/separator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace dscc {

LayeredSeparator::LayeredSeparator(View view, NodeId root, Direction dir, int d,
                                   int feedback_in_view, int n_global)
    : view_(view), g_(view.graph), dir_(dir), d_(d), total_s_(feedback_in_view) {
  if (d < 1) throw ContractViolation("separator: d must be at least 1");
  if (!g_->node_alive(root) || !view_.contains(root)) {
    throw ContractViolation("separator: root not in view");
  }
  factor_ = 2.0 * std::log2(static_cast<double>(std::max(n_global, 1))) / d;
  visit(root, 0);
  if (dir_ == Direction::kOut && g_->is_feedback(root)) {
    frontier_.push_back(root);
  } else {
    queue_.push_back(root);
    if (g_->is_feedback(root)) s_in_layer_ = 1;
  }
}

std::span<const EdgeId> LayeredSeparator::edges_of(NodeId x) const {
  return dir_ == Direction::kOut ? g_->out_edges(x) : g_->in_edges(x);
}

NodeId LayeredSeparator::other_end(EdgeId e) const {
  return dir_ == Direction::kOut ? g_->head(e) : g_->tail(e);
}

void LayeredSeparator::visit(NodeId y, int layer) {
  layer_of_.emplace(y, layer);
  visited_.push_back(y);
}

bool LayeredSeparator::check_cut(int layer, std::span<const NodeId> cut) {
  const std::int64_t before = s_before_;
  const std::int64_t rest = total_s_ - before - static_cast<std::int64_t>(cut.size());
  const double bound = factor_ * static_cast<double>(std::max<std::int64_t>(0, std::min(before, rest)));
  // A layer qualifies when it grows the S-count by a factor strictly below
  // 1 + 2 lg n / d; an empty layer means the search is exhausted.
  if (cut.empty() || static_cast<double>(cut.size()) < bound - 1e-12) return true;
  if (layer >= d_) {
    result_.forced = true;
    return true;
  }
  return false;
}

void LayeredSeparator::finish(int layer, std::vector<NodeId> cut) {
  result_.layer = layer;
  result_.s_sep = std::move(cut);
  result_.v_sep.reserve(visited_.size() - result_.s_sep.size());
  for (NodeId x : visited_) {
    if (layer_of_[x] == layer && g_->is_feedback(x)) continue;
    result_.v_sep.push_back(x);
    result_.v_flatten += g_->flatten_size(x);
  }
  done_ = true;
  layer_of_ = {};
  visited_ = {};
  queue_ = {};
  frontier_ = {};
  next_ = {};
}

bool LayeredSeparator::step() {
  if (done_) return true;

  if (cur_ != kNone) {
    const auto edges = edges_of(cur_);
    if (edge_pos_ >= edges.size()) {
      cur_ = kNone;
      return false;
    }
    const EdgeId e = edges[edge_pos_++];
    ++result_.edges_touched;
    if (!view_.edge_in(e)) return false;
    const NodeId y = other_end(e);
    if (layer_of_.count(y)) return false;
    const bool in_s = g_->is_feedback(y);
    if (dir_ == Direction::kOut) {
      // A feedback node's own out-edges cost 1; everything else costs 0.
      if (!expanding_frontier_) {
        visit(y, layer_);
        (in_s ? frontier_ : queue_).push_back(y);
      } else {
        visit(y, layer_ + 1);
        (in_s ? next_ : queue_).push_back(y);
      }
    } else {
      // Walking edges backwards: stepping onto a feedback node costs 1.
      if (in_s) {
        visit(y, layer_ + 1);
        next_.push_back(y);
      } else {
        visit(y, layer_);
        queue_.push_back(y);
      }
    }
    return false;
  }

  if (dir_ == Direction::kOut) {
    if (!expanding_frontier_) {
      if (queue_head_ < queue_.size()) {
        cur_ = queue_[queue_head_++];
        edge_pos_ = 0;
        return false;
      }
      // Zero-weight closure of layer_ is complete; frontier_ is L_layer_ & S.
      if (layer_ >= 1 && check_cut(layer_, frontier_)) {
        finish(layer_, std::move(frontier_));
        return true;
      }
      s_before_ += static_cast<std::int64_t>(frontier_.size());
      expanding_frontier_ = true;
      frontier_head_ = 0;
      queue_.clear();
      queue_head_ = 0;
      return false;
    }
    if (frontier_head_ < frontier_.size()) {
      cur_ = frontier_[frontier_head_++];
      edge_pos_ = 0;
      return false;
    }
    ++layer_;
    expanding_frontier_ = false;
    frontier_ = std::move(next_);
    next_.clear();
    frontier_head_ = 0;
    return false;
  }

  if (queue_head_ < queue_.size()) {
    cur_ = queue_[queue_head_++];
    edge_pos_ = 0;
    return false;
  }
  // Layer layer_ is complete, so next_ is exactly L_{layer_+1} & S.
  s_before_ += s_in_layer_;
  if (check_cut(layer_ + 1, next_)) {
    finish(layer_ + 1, std::move(next_));
    return true;
  }
  ++layer_;
  queue_ = std::move(next_);
  next_.clear();
  queue_head_ = 0;
  s_in_layer_ = static_cast<int>(queue_.size());
  return false;
}

SeparatorResult out_separator(View view, NodeId root, int d, int feedback_in_view, int n_global) {
  LayeredSeparator sep(view, root, Direction::kOut, d, feedback_in_view, n_global);
  sep.run();
  return sep.take();
}

SeparatorResult in_separator(View view, NodeId root, int d, int feedback_in_view, int n_global) {
  LayeredSeparator sep(view, root, Direction::kIn, d, feedback_in_view, n_global);
  sep.run();
  return sep.take();
}

RaceResult race_separators(View view, NodeId root, int d, int feedback_in_view, int n_global,
                           std::int64_t view_flatten) {
  LayeredSeparator out(view, root, Direction::kOut, d, feedback_in_view, n_global);
  LayeredSeparator in(view, root, Direction::kIn, d, feedback_in_view, n_global);
  RaceResult race;
  LayeredSeparator* winner = nullptr;
  LayeredSeparator* loser = nullptr;
  while (winner == nullptr) {
    ++race.steps;
    if (out.step()) {
      winner = &out;
      loser = &in;
    } else if (in.step()) {
      winner = &in;
      loser = &out;
    }
  }
  if (3 * winner->result().v_flatten > 2 * view_flatten) {
    loser->run();
    std::swap(winner, loser);
    race.resumed = true;
  }
  race.edges_touched = out.result().edges_touched + in.result().edges_touched;
  race.direction = winner->direction();
  race.result = winner->take();
  return race;
}

SplitStats& SplitStats::operator+=(const SplitStats& o) {
  separator_edge_scans += o.separator_edge_scans;
  ges_edge_scans += o.ges_edge_scans;
  calls += o.calls;
  ratio_violations += o.ratio_violations;
  center_fallbacks += o.center_fallbacks;
  max_depth = std::max(max_depth, o.max_depth);
  return *this;
}

namespace {

class Splitter {
 public:
  Splitter(LevelGraph& g, GesSlots& slots, int d, int n_global)
      : g_(g), slots_(slots), d_(d), n_global_(n_global) {}

  void run(std::span<const NodeId> nodes, int depth);
  SplitResult out;

 private:
  void emit_separator(std::span<const NodeId> s_sep) {
    for (NodeId s : s_sep) {
      g_.set_view(s, kNoView);
      out.s_split.push_back(s);
      out.partition.push_back({s});
    }
  }
  void recurse(std::span<const NodeId> nodes, std::int64_t flatten, std::int64_t parent_flatten,
               int depth) {
    if (nodes.empty()) return;
    if (3 * flatten > 2 * parent_flatten) ++out.stats.ratio_violations;
    run(nodes, depth + 1);
  }

  LevelGraph& g_;
  GesSlots& slots_;
  int d_;
  int n_global_;
};

void Splitter::run(std::span<const NodeId> nodes, int depth) {
  ++out.stats.calls;
  out.stats.max_depth = std::max(out.stats.max_depth, depth);
  const View view = g_.induced_view(nodes);

  // Roots are taken in order of lowest member vertex.
  std::vector<std::pair<VertexId, NodeId>> order;
  order.reserve(nodes.size());
  std::int64_t flat = 0;
  int s_count = 0;
  for (NodeId x : nodes) {
    const auto members = g_.members(x);
    order.emplace_back(*std::min_element(members.begin(), members.end()), x);
    flat += static_cast<std::int64_t>(members.size());
    if (g_.is_feedback(x)) ++s_count;
  }
  std::sort(order.begin(), order.end());
  std::size_t next_root = 0;

  auto drop = [&](std::span<const NodeId> xs) {
    for (NodeId x : xs) {
      flat -= g_.flatten_size(x);
      if (g_.is_feedback(x)) --s_count;
    }
  };

  while (flat > 0) {
    while (!view.contains(order[next_root].second)) ++next_root;
    const auto [r, root] = order[next_root];

    RaceResult race = race_separators(view, root, std::max(1, d_ / 16), s_count, n_global_, flat);
    out.stats.separator_edge_scans += race.edges_touched;
    SeparatorResult& sep = race.result;
    if (3 * sep.v_flatten <= 2 * flat) {
      drop(sep.v_sep);
      drop(sep.s_sep);
      emit_separator(sep.s_sep);
      recurse(sep.v_sep, sep.v_flatten, flat + sep.v_flatten + static_cast<std::int64_t>(sep.s_sep.size()), depth);
      continue;
    }

    std::vector<NodeId> remaining;
    remaining.reserve(order.size() - next_root);
    for (std::size_t i = next_root; i < order.size(); ++i) {
      if (view.contains(order[i].second)) remaining.push_back(order[i].second);
    }
    auto ges = std::make_unique<GesTree>(view, slots_, r, std::max(1, d_ / 2), remaining);
    bool abandoned = false;
    for (NodeId x = ges->get_unreachable(); x != kNone; x = ges->get_unreachable()) {
      const std::int64_t before = flat;
      SeparatorResult cut = ges->distance_from(x) == kInfinity
                                ? in_separator(view, x, std::max(1, d_ / 4), s_count, n_global_)
                                : out_separator(view, x, std::max(1, d_ / 4), s_count, n_global_);
      out.stats.separator_edge_scans += cut.edges_touched;
      std::vector<NodeId> victims = cut.v_sep;
      victims.insert(victims.end(), cut.s_sep.begin(), cut.s_sep.end());
      const NodeId center = ges->center_node();
      drop(victims);
      if (std::find(victims.begin(), victims.end(), center) != victims.end()) {
        // The cut reached the center, which only happens when d is too small
        // for the layer bound. Give up on this tree; the outer loop picks a
        // new root among what is left.
        ++out.stats.center_fallbacks;
        abandoned = true;
      } else {
        ges->delete_nodes(victims);
      }
      emit_separator(cut.s_sep);
      recurse(cut.v_sep, cut.v_flatten, before, depth);
      if (abandoned) break;
    }
    out.stats.ges_edge_scans += ges->counters().edge_scans;
    if (abandoned) continue;
    std::vector<NodeId> part = ges->get_all_nodes();
    for (NodeId x : part) g_.set_view(x, kNoView);
    out.partition.push_back(std::move(part));
    flat = 0;
  }
}

}  // namespace

SplitResult split(LevelGraph& graph, GesSlots& slots, std::span<const NodeId> nodes, int d,
                  int n_global) {
  if (d < 1) throw ContractViolation("split: d must be at least 1");
  for (NodeId x : nodes) {
    if (!graph.node_alive(x)) throw ContractViolation("split: stale node");
  }
  Splitter s(graph, slots, d, n_global);
  if (!nodes.empty()) s.run(nodes, 0);
  return std::move(s.out);
}

}  // namespace dscc

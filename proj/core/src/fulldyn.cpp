#include "dscc/fulldyn.hpp"

#include <algorithm>
#include <string>

namespace dscc {

struct FullyDynamicReach::Snapshot {
  Hierarchy h;
  std::vector<EdgeId> local_of;  // global edge id -> structure edge id, or kNone
};

FullyDynamicReach::FullyDynamicReach(int n, std::span<const EdgePair> edges,
                                     std::span<const VertexId> sources, int t,
                                     HierarchyOptions opts)
    : t_(t), opts_(opts), next_seed_(opts.seed) {
  if (n < 1) throw InputError("vertex count must be positive");
  present_.assign(n, 1);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("edge endpoint out of range");
  }
  edges_.assign(edges.begin(), edges.end());
  edge_alive_.assign(edges_.size(), 1);
  for (VertexId s : sources) {
    if (s < 0 || s >= n) throw InputError("source out of range");
    if (std::find(sources_.begin(), sources_.end(), s) == sources_.end()) sources_.push_back(s);
  }
  if (sources_.empty()) throw InputError("at least one source is required");
  if (t < 1 || t > static_cast<int>(sources_.size())) {
    throw InputError("threshold t must lie in [1, number of sources]");
  }
  rebuild();
  rebuilds_ = 0;  // the initial build is not a rebuild
}

FullyDynamicReach::~FullyDynamicReach() = default;

bool FullyDynamicReach::present(VertexId v) const {
  return v >= 0 && v < universe() && present_[v] != 0;
}

std::vector<EdgePair> FullyDynamicReach::alive_edges() const {
  std::vector<EdgePair> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edge_alive_[e]) out.push_back(edges_[e]);
  }
  return out;
}

std::unique_ptr<FullyDynamicReach::Snapshot> FullyDynamicReach::snapshot(VertexId root,
                                                                         bool reversed) {
  std::vector<EdgePair> local;
  std::vector<EdgeId> local_of(edges_.size(), kNone);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edge_alive_[e]) continue;
    local_of[e] = static_cast<EdgeId>(local.size());
    const auto [u, v] = edges_[e];
    local.push_back(reversed ? EdgePair{v, u} : EdgePair{u, v});
  }
  HierarchyOptions o = opts_;
  o.seed = next_seed_++;
  return std::make_unique<Snapshot>(
      Snapshot{Hierarchy::new_ssr(universe(), local, root, o), std::move(local_of)});
}

void FullyDynamicReach::rebuild() {
  base_.clear();
  for (VertexId s : sources_) {
    // A deleted source keeps no structure until it comes back.
    base_.push_back(present(s) ? snapshot(s, false) : nullptr);
  }
  inserted_.clear();
  ++rebuilds_;
}

void FullyDynamicReach::insert_vertex(VertexId u, std::span<const EdgePair> incident) {
  if (u < 0) throw InputError("insert: negative vertex id");
  if (present(u)) throw InputError("insert: vertex " + std::to_string(u) + " already present");
  if (u >= universe()) present_.resize(u + 1, 0);
  present_[u] = 1;
  for (const auto& [a, b] : incident) {
    const bool ok = (a == u && present(b)) || (b == u && present(a));
    if (!ok) {
      present_[u] = 0;
      throw InputError("insert: edge " + std::to_string(a) + " " + std::to_string(b) +
                       " must join " + std::to_string(u) + " to a present vertex");
    }
  }
  for (const auto& e : incident) {
    edges_.push_back(e);
    edge_alive_.push_back(1);
  }
  ++insertions_;
  Inserted entry{u, snapshot(u, false), snapshot(u, true)};
  inserted_.push_back(std::move(entry));
  if (static_cast<int>(inserted_.size()) >= t_) rebuild();
}

void FullyDynamicReach::delete_vertex(VertexId u) {
  if (!present(u)) throw InputError("delete: vertex " + std::to_string(u) + " is not present");
  auto drop = [](Snapshot* s, EdgeId e) {
    if (s == nullptr || e >= static_cast<EdgeId>(s->local_of.size())) return;
    const EdgeId local = s->local_of[e];
    if (local != kNone && s->h.edge_alive(local)) s->h.delete_edge_id(local);
  };
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edge_alive_[e] || (edges_[e].first != u && edges_[e].second != u)) continue;
    edge_alive_[e] = 0;
    const auto id = static_cast<EdgeId>(e);
    for (auto& b : base_) drop(b.get(), id);
    for (auto& r : inserted_) {
      drop(r.out.get(), id);
      drop(r.in.get(), id);
    }
  }
  present_[u] = 0;
}

bool FullyDynamicReach::probe(const Snapshot& s, VertexId v) const {
  return v < s.h.vertex_count() && s.h.reaches(v);
}

bool FullyDynamicReach::query(VertexId s, VertexId v) {
  const auto it = std::find(sources_.begin(), sources_.end(), s);
  if (it == sources_.end()) throw InputError("query: " + std::to_string(s) + " is not a source");
  if (!present(s)) throw InputError("query: source " + std::to_string(s) + " is not present");
  if (!present(v)) throw InputError("query: vertex " + std::to_string(v) + " is not present");
  const Snapshot* base = base_[it - sources_.begin()].get();
  std::uint64_t probes = 0;
  bool answer = false;
  if (base != nullptr) {
    ++probes;
    answer = probe(*base, v);
  }
  for (auto r = inserted_.rbegin(); !answer && r != inserted_.rend(); ++r) {
    ++probes;
    answer = probe(*r->in, s) && probe(*r->out, v);
  }
  last_probes_ = probes;
  max_probes_ = std::max(max_probes_, probes);
  return answer;
}

}  // namespace dscc

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dscc/fulldyn.hpp"
#include "dscc/hierarchy.hpp"
#include "dscc/io.hpp"
#include "dscc/oracle.hpp"

namespace {

using namespace dscc;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

struct Mismatch {
  std::size_t index;
  int line;
  std::string detail;
};

template <class F>
auto with_file(const std::string& path, F&& parse) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return parse(in);
  } catch (const io::ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

int parse_delta(const std::string& s) {
  if (s == "AUTO" || s == "auto") return 0;
  try {
    std::size_t used = 0;
    const int d = std::stoi(s, &used);
    if (used == s.size() && d >= 2) return d;
  } catch (const std::exception&) {
  }
  throw InputError("--delta must be AUTO or an integer >= 2, got '" + s + "'");
}

std::vector<EdgePair> alive_user_edges(const io::GraphData& g, const std::vector<char>& alive) {
  std::vector<EdgePair> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (alive[e]) out.push_back(g.edges[e]);
  }
  return out;
}

// Lowest-id alive copy of u->v, mirroring the structure's own choice.
std::size_t take_edge(const io::GraphData& g, std::vector<char>& alive, VertexId u, VertexId v) {
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (alive[e] && g.edges[e] == EdgePair{u, v}) {
      alive[e] = 0;
      return e;
    }
  }
  throw InputError("delete: no alive edge " + std::to_string(u) + " -> " + std::to_string(v));
}

void require_vertex(const io::GraphData& g, VertexId v) {
  if (v < 0 || v >= g.n) throw InputError("vertex " + std::to_string(v) + " out of range");
}

// Names a pair the two partitions disagree on; only called after a mismatch.
std::string first_partition_difference(const std::vector<int>& got, const std::vector<int>& want) {
  const int n = static_cast<int>(got.size());
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const bool a = got[u] == got[v];
      const bool b = want[u] == want[v];
      if (a != b) {
        return "same_scc(" + std::to_string(u) + "," + std::to_string(v) + ")=" +
               std::to_string(a) + " oracle=" + std::to_string(b);
      }
    }
  }
  return "partitions differ";
}

struct CheckOptions {
  std::string graph;
  std::string trace;
  std::string mode = "scc";
  int source = 0;
  std::vector<int> sources;
  int t = 1;
  std::string delta = "AUTO";
  std::uint64_t seed = 1;
  bool corrupt = false;
};

std::optional<Mismatch> check_scc(const CheckOptions& o, const io::GraphData& g,
                                  const std::vector<io::TraceOp>& trace, HierarchyOptions h) {
  auto s = Hierarchy::new_scc(g.n, g.edges, h);
  std::vector<char> alive(g.edges.size(), 1);
  auto truth = oracle::tarjan_scc(g.edges, g.n);
  // The corrupted build answers the negation of its own structure once.
  bool corrupt = o.corrupt;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& op = trace[k];
    if (op.kind == io::OpKind::kQuery) {
      require_vertex(g, op.a);
      require_vertex(g, op.b);
      bool got = s.same_scc(op.a, op.b);
      if (corrupt) {
        got = !got;
        corrupt = false;
      }
      const bool want = truth.label[op.a] == truth.label[op.b];
      std::cout << (got ? 1 : 0) << '\n';
      if (got != want) {
        return Mismatch{k, op.line, "same_scc=" + std::to_string(got) +
                                        " oracle=" + std::to_string(want)};
      }
    } else if (op.kind == io::OpKind::kDelete) {
      require_vertex(g, op.a);
      require_vertex(g, op.b);
      take_edge(g, alive, op.a, op.b);
      s.delete_edge(op.a, op.b);
      truth = oracle::tarjan_scc(alive_user_edges(g, alive), g.n);
      std::vector<int> labels = s.scc_labels();
      if (corrupt && g.n >= 2) {
        labels[0] = labels[1] == labels[0] ? labels[0] + g.n : labels[1];
        corrupt = false;
      }
      if (!oracle::same_partition(labels, truth.label)) {
        return Mismatch{k, op.line, first_partition_difference(labels, truth.label)};
      }
    } else {
      throw InputError("line " + std::to_string(op.line) + ": operation not valid in scc mode");
    }
  }
  return std::nullopt;
}

std::optional<Mismatch> check_ssr(const CheckOptions& o, const io::GraphData& g,
                                  const std::vector<io::TraceOp>& trace, HierarchyOptions h) {
  require_vertex(g, o.source);
  auto s = Hierarchy::new_ssr(g.n, g.edges, o.source, h);
  std::vector<char> alive(g.edges.size(), 1);
  auto truth = oracle::reachable_from(g.edges, g.n, o.source);
  bool corrupt = o.corrupt;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& op = trace[k];
    if (op.kind == io::OpKind::kReach) {
      require_vertex(g, op.a);
      bool got = s.reaches(op.a);
      if (corrupt) {
        got = !got;
        corrupt = false;
      }
      const bool want = truth[op.a] != 0;
      std::cout << (got ? 1 : 0) << '\n';
      if (got != want) {
        return Mismatch{k, op.line,
                        "reaches=" + std::to_string(got) + " oracle=" + std::to_string(want)};
      }
    } else if (op.kind == io::OpKind::kDelete) {
      require_vertex(g, op.a);
      require_vertex(g, op.b);
      take_edge(g, alive, op.a, op.b);
      s.delete_edge(op.a, op.b);
      truth = oracle::reachable_from(alive_user_edges(g, alive), g.n, o.source);
      for (VertexId v = 0; v < g.n; ++v) {
        bool got = s.reaches(v);
        if (corrupt) {
          got = !got;
          corrupt = false;
        }
        if (got != (truth[v] != 0)) {
          return Mismatch{k, op.line, "reaches(" + std::to_string(v) + ")=" + std::to_string(got) +
                                          " oracle=" + std::to_string(truth[v] != 0)};
        }
      }
    } else {
      throw InputError("line " + std::to_string(op.line) + ": operation not valid in ssr mode");
    }
  }
  return std::nullopt;
}

std::optional<Mismatch> check_fulldyn(const CheckOptions& o, const io::GraphData& g,
                                      const std::vector<io::TraceOp>& trace, HierarchyOptions h) {
  std::vector<VertexId> sources(o.sources.begin(), o.sources.end());
  if (sources.empty()) sources.push_back(o.source);
  FullyDynamicReach fd(g.n, g.edges, sources, o.t, h);
  bool corrupt = o.corrupt;
  auto verify = [&]() -> std::optional<std::string> {
    const auto edges = fd.alive_edges();
    for (VertexId s : fd.sources()) {
      if (!fd.present(s)) continue;
      const auto reach = oracle::reachable_from(edges, fd.universe(), s);
      for (VertexId v = 0; v < fd.universe(); ++v) {
        if (!fd.present(v)) continue;
        bool got = fd.query(s, v);
        if (corrupt) {
          got = !got;
          corrupt = false;
        }
        if (got != (reach[v] != 0)) {
          return "query(" + std::to_string(s) + "," + std::to_string(v) + ")=" +
                 std::to_string(got) + " oracle=" + std::to_string(reach[v] != 0);
        }
      }
    }
    return std::nullopt;
  };
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& op = trace[k];
    if (op.kind == io::OpKind::kQueryFull) {
      bool got = fd.query(op.a, op.b);
      if (corrupt) {
        got = !got;
        corrupt = false;
      }
      const auto reach = oracle::reachable_from(fd.alive_edges(), fd.universe(), op.a);
      const bool want = reach[op.b] != 0;
      std::cout << (got ? 1 : 0) << '\n';
      if (got != want) {
        return Mismatch{k, op.line,
                        "query=" + std::to_string(got) + " oracle=" + std::to_string(want)};
      }
      continue;
    }
    if (op.kind == io::OpKind::kInsert) {
      fd.insert_vertex(op.a, op.edges);
    } else if (op.kind == io::OpKind::kDeleteVertex) {
      fd.delete_vertex(op.a);
    } else {
      throw InputError("line " + std::to_string(op.line) +
                       ": operation not valid in fulldyn mode");
    }
    if (auto err = verify()) return Mismatch{k, op.line, *err};
  }
  return std::nullopt;
}

int run_check(const CheckOptions& o) {
  const auto g = with_file(o.graph, io::read_graph);
  const auto trace = with_file(o.trace, io::read_trace);
  HierarchyOptions h;
  h.delta = parse_delta(o.delta);
  h.seed = o.seed;
  std::optional<Mismatch> bad;
  if (o.mode == "scc") {
    bad = check_scc(o, g, trace, h);
  } else if (o.mode == "ssr") {
    bad = check_ssr(o, g, trace, h);
  } else {
    bad = check_fulldyn(o, g, trace, h);
  }
  if (bad) {
    std::cout << "MISMATCH op=" << bad->index + 1 << " line=" << bad->line << ": " << bad->detail
              << '\n';
    return kExitMismatch;
  }
  std::cout << "OK ops=" << trace.size() << '\n';
  return kExitOk;
}

struct BenchOptions {
  std::string graph;
  std::string trace;
  std::string delta = "AUTO";
  std::uint64_t seed = 1;
  int repeat = 1;
};

using Counters = std::map<std::string, std::uint64_t>;

Counters flatten_stats(const HierarchyStats& s, const std::string& prefix) {
  Counters c;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const auto& l = s.levels[i];
    const std::string p = prefix + "level" + std::to_string(i) + ".";
    c[p + "ges_edge_scans"] = l.ges.edge_scans;
    c[p + "ges_level_increases"] = l.ges.level_increases;
    c[p + "split_edge_scans"] = l.split_edge_scans;
    c[p + "separator_edge_scans"] = l.separator_edge_scans;
    c[p + "edge_moves"] = l.edge_moves;
    c[p + "ges_reinits"] = l.ges_inits;
    c[p + "trees_destroyed"] = l.trees_destroyed;
  }
  c[prefix + "total_work"] = s.total_work();
  return c;
}

Counters diff(const Counters& after, const Counters& before) {
  Counters d;
  for (const auto& [k, v] : after) {
    const auto it = before.find(k);
    d[k] = v - (it == before.end() ? 0 : it->second);
  }
  return d;
}

int run_bench(const BenchOptions& o) {
  const auto g = with_file(o.graph, io::read_graph);
  std::vector<io::TraceOp> trace;
  if (!o.trace.empty()) trace = with_file(o.trace, io::read_trace);
  HierarchyOptions h;
  h.delta = parse_delta(o.delta);
  h.seed = o.seed;
  if (o.repeat < 1) throw InputError("--repeat must be at least 1");

  std::optional<Counters> first;
  bool deterministic = true;
  std::vector<double> init_ms, delete_ms;
  Counters report;
  for (int run = 0; run < o.repeat; ++run) {
    const auto t0 = std::chrono::steady_clock::now();
    auto s = Hierarchy::new_scc(g.n, g.edges, h);
    const auto t1 = std::chrono::steady_clock::now();
    const HierarchyStats init = s.stats();
    std::uint64_t sink = 0;
    for (const auto& op : trace) {
      switch (op.kind) {
        case io::OpKind::kDelete: s.delete_edge(op.a, op.b); break;
        case io::OpKind::kQuery: sink += s.same_scc(op.a, op.b) ? 1 : 0; break;
        default: throw InputError("line " + std::to_string(op.line) + ": bench replays D and Q only");
      }
    }
    const auto t2 = std::chrono::steady_clock::now();
    const HierarchyStats end = s.stats();
    Counters c = flatten_stats(init, "init.");
    const Counters init_flat = flatten_stats(init, "");
    for (auto& [k, v] : diff(flatten_stats(end, ""), init_flat)) c["delete." + k] = v;
    c["n"] = static_cast<std::uint64_t>(g.n);
    c["m"] = g.edges.size();
    c["delta"] = static_cast<std::uint64_t>(s.delta());
    c["levels"] = static_cast<std::uint64_t>(s.level_count());
    c["deletions"] = end.deletions;
    c["queries_true"] = sink;
    for (int i = 0; i < s.level_count(); ++i) {
      c["level" + std::to_string(i) + ".s_set_size"] = static_cast<std::uint64_t>(end.levels[i].s_size);
    }
    c["root_resplits"] = end.root_shrink_ratios.size();
    if (first && *first != c) deterministic = false;
    if (!first) first = c;
    report = c;
    init_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    delete_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
  }
  for (const auto& [k, v] : report) std::cout << k << '=' << v << '\n';
  std::cout << "deterministic=" << (deterministic ? 1 : 0) << '\n';
  std::cout << "repeat=" << o.repeat << '\n';
  std::cout << "wall_ms.init.min=" << *std::min_element(init_ms.begin(), init_ms.end()) << '\n';
  std::cout << "wall_ms.delete.min=" << *std::min_element(delete_ms.begin(), delete_ms.end())
            << '\n';
  return kExitOk;
}

struct GenOptions {
  int n = 0;
  std::int64_t m = -1;
  std::string model = "gnm";
  std::string deletions = "all";
  std::uint64_t seed = 1;
  std::string graph_out;
  std::string trace_out;
};

int run_gen(const GenOptions& o) {
  io::GenParams p;
  p.n = o.n;
  p.model = o.model;
  p.seed = o.seed;
  if (o.m >= 0) {
    p.m = o.m;
  } else if (o.model == "cycle") {
    p.m = io::model_capacity("cycle", o.n);
  } else {
    throw InputError("--m is required for model " + o.model);
  }
  if (o.deletions == "all") {
    p.deletions = -1;
  } else {
    try {
      std::size_t used = 0;
      p.deletions = std::stoll(o.deletions, &used);
      if (used != o.deletions.size() || p.deletions < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("--deletions must be 'all' or a non-negative integer");
    }
  }
  const auto w = io::generate(p);
  auto emit = [](const std::string& path, auto&& write) {
    if (path.empty()) {
      write(std::cout);
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    write(out);
  };
  emit(o.graph_out, [&](std::ostream& out) { io::write_graph(out, w.graph); });
  emit(o.trace_out, [&](std::ostream& out) { io::write_trace(out, w.trace); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decremental SCC / single-source reachability harness"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Replay a trace against the oracle");
  c->add_option("--graph", check.graph, "Graph file")->required();
  c->add_option("--trace", check.trace, "Trace file")->required();
  c->add_option("--mode", check.mode, "scc, ssr or fulldyn")
      ->check(CLI::IsMember({"scc", "ssr", "fulldyn"}));
  c->add_option("--source", check.source, "Source vertex (ssr)");
  c->add_option("--sources", check.sources, "Source vertices (fulldyn)")->delimiter(',');
  c->add_option("--t", check.t, "Rebuild threshold (fulldyn)");
  c->add_option("--delta", check.delta, "AUTO or an integer >= 2");
  c->add_option("--seed", check.seed, "Structure seed");
  c->add_flag("--corrupt", check.corrupt)->group("");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Replay without checks and print work counters");
  b->add_option("--graph", bench.graph, "Graph file")->required();
  b->add_option("--trace", bench.trace, "Trace file (D and Q lines)");
  b->add_option("--delta", bench.delta, "AUTO or an integer >= 2");
  b->add_option("--seed", bench.seed, "Structure seed");
  b->add_option("--repeat", bench.repeat, "Number of runs");

  GenOptions gen;
  auto* gcmd = app.add_subcommand("gen", "Generate a graph and a deletion trace");
  gcmd->add_option("--n", gen.n, "Vertex count")->required();
  gcmd->add_option("--m", gen.m, "Edge count");
  gcmd->add_option("--model", gen.model, "gnm, cycle, cycle+chords or layered");
  gcmd->add_option("--deletions", gen.deletions, "all or a count");
  gcmd->add_option("--seed", gen.seed, "Generator seed");
  gcmd->add_option("--graph-out", gen.graph_out, "Write the graph here instead of stdout");
  gcmd->add_option("--trace-out", gen.trace_out, "Write the trace here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (c->parsed()) return run_check(check);
    if (b->parsed()) return run_bench(bench);
    return run_gen(gen);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitMismatch;
  }
}

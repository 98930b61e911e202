#include "dscc/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace dscc::io {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      tokens.clear();
      std::istringstream ss(line);
      for (std::string t; ss >> t;) tokens.push_back(t);
      return true;
    }
    return false;
  }
  int line() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

std::int64_t to_int(const std::string& s, int line) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

VertexId to_vertex(const std::string& s, int line) {
  const std::int64_t v = to_int(s, line);
  if (v < 0 || v > INT32_MAX) throw ParseError(line, "vertex id out of range: " + s);
  return static_cast<VertexId>(v);
}

void expect_tokens(const std::vector<std::string>& t, std::size_t count, int line) {
  if (t.size() != count) {
    throw ParseError(line, "expected " + std::to_string(count) + " fields, got " +
                               std::to_string(t.size()));
  }
}

}  // namespace

GraphData read_graph(std::istream& in) {
  LineReader r(in);
  std::vector<std::string> t;
  if (!r.next(t)) throw ParseError(r.line(), "missing 'n m' header");
  expect_tokens(t, 2, r.line());
  GraphData g;
  const std::int64_t n = to_int(t[0], r.line());
  const std::int64_t m = to_int(t[1], r.line());
  if (n < 1 || n > INT32_MAX) throw ParseError(r.line(), "vertex count must be positive");
  if (m < 0) throw ParseError(r.line(), "edge count must be non-negative");
  g.n = static_cast<int>(n);
  g.edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    if (!r.next(t)) throw ParseError(r.line(), "expected " + std::to_string(m) + " edge lines");
    expect_tokens(t, 2, r.line());
    const VertexId u = to_vertex(t[0], r.line());
    const VertexId v = to_vertex(t[1], r.line());
    if (u >= g.n || v >= g.n) throw ParseError(r.line(), "edge endpoint out of range");
    g.edges.emplace_back(u, v);
  }
  if (r.next(t)) throw ParseError(r.line(), "unexpected content after the last edge");
  return g;
}

void write_graph(std::ostream& out, const GraphData& g) {
  out << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

std::vector<TraceOp> read_trace(std::istream& in) {
  LineReader r(in);
  std::vector<std::string> t;
  std::vector<TraceOp> ops;
  while (r.next(t)) {
    TraceOp op;
    op.line = r.line();
    const std::string& k = t[0];
    if (k == "D" || k == "Q" || k == "QF") {
      expect_tokens(t, 3, r.line());
      op.kind = k == "D" ? OpKind::kDelete : k == "Q" ? OpKind::kQuery : OpKind::kQueryFull;
      op.a = to_vertex(t[1], r.line());
      op.b = to_vertex(t[2], r.line());
    } else if (k == "R" || k == "DV") {
      expect_tokens(t, 2, r.line());
      op.kind = k == "R" ? OpKind::kReach : OpKind::kDeleteVertex;
      op.a = to_vertex(t[1], r.line());
    } else if (k == "I") {
      expect_tokens(t, 3, r.line());
      op.kind = OpKind::kInsert;
      op.a = to_vertex(t[1], r.line());
      const std::int64_t count = to_int(t[2], r.line());
      if (count < 0) throw ParseError(r.line(), "negative edge count");
      for (std::int64_t i = 0; i < count; ++i) {
        if (!r.next(t)) throw ParseError(r.line(), "insert is missing edge lines");
        expect_tokens(t, 2, r.line());
        op.edges.emplace_back(to_vertex(t[0], r.line()), to_vertex(t[1], r.line()));
      }
    } else {
      throw ParseError(r.line(), "unknown operation '" + k + "'");
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

void write_trace(std::ostream& out, std::span<const TraceOp> ops) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case OpKind::kDelete: out << "D " << op.a << ' ' << op.b << '\n'; break;
      case OpKind::kQuery: out << "Q " << op.a << ' ' << op.b << '\n'; break;
      case OpKind::kQueryFull: out << "QF " << op.a << ' ' << op.b << '\n'; break;
      case OpKind::kReach: out << "R " << op.a << '\n'; break;
      case OpKind::kDeleteVertex: out << "DV " << op.a << '\n'; break;
      case OpKind::kInsert:
        out << "I " << op.a << ' ' << op.edges.size() << '\n';
        for (const auto& [u, v] : op.edges) out << u << ' ' << v << '\n';
        break;
    }
  }
}

namespace {

std::vector<int> layer_sizes(int n) {
  const int layers = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
  std::vector<int> sizes(layers, n / layers);
  for (int i = 0; i < n % layers; ++i) ++sizes[i];
  return sizes;
}

}  // namespace

std::int64_t model_capacity(const std::string& model, int n) {
  const std::int64_t nn = n;
  if (model == "gnm" || model == "cycle+chords") return nn * (nn - 1);
  if (model == "cycle") return nn >= 2 ? nn : 0;
  if (model == "layered") {
    const auto sizes = layer_sizes(n);
    std::int64_t cap = 0;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
      cap += 2 * static_cast<std::int64_t>(sizes[i]) * sizes[i + 1];
    }
    return cap;
  }
  throw InputError("unknown model '" + model + "'");
}

Workload generate(const GenParams& p) {
  if (p.n < 1) throw InputError("n must be positive");
  if (p.m < 0) throw InputError("m must be non-negative");
  const std::int64_t cap = model_capacity(p.model, p.n);
  if (p.m > cap) {
    throw InputError("m = " + std::to_string(p.m) + " exceeds the model capacity " +
                     std::to_string(cap));
  }
  if (p.model == "cycle+chords" && p.n >= 2 && p.m < p.n) {
    throw InputError("cycle+chords needs m >= n");
  }
  if (p.model == "cycle" && p.m != cap) {
    throw InputError("cycle needs m = " + std::to_string(cap));
  }
  std::mt19937_64 rng(p.seed);
  Workload w;
  w.graph.n = p.n;
  auto& edges = w.graph.edges;
  std::unordered_set<std::int64_t> used;
  auto key = [&](VertexId u, VertexId v) { return static_cast<std::int64_t>(u) * p.n + v; };
  auto add = [&](VertexId u, VertexId v) {
    if (u == v || !used.insert(key(u, v)).second) return false;
    edges.emplace_back(u, v);
    return true;
  };
  std::uniform_int_distribution<VertexId> any(0, p.n - 1);

  if (p.model == "cycle") {
    for (VertexId v = 0; v < p.m; ++v) add(v, (v + 1) % p.n);
  } else if (p.model == "gnm" || p.model == "cycle+chords") {
    if (p.model == "cycle+chords" && p.n >= 2) {
      for (VertexId v = 0; v < p.n; ++v) add(v, (v + 1) % p.n);
    }
    // Rejection sampling is fine below half density; above it, enumerate.
    if (p.m * 2 <= cap) {
      while (static_cast<std::int64_t>(edges.size()) < p.m) add(any(rng), any(rng));
    } else {
      std::vector<EdgePair> rest;
      for (VertexId u = 0; u < p.n; ++u) {
        for (VertexId v = 0; v < p.n; ++v) {
          if (u != v && !used.count(key(u, v))) rest.emplace_back(u, v);
        }
      }
      std::shuffle(rest.begin(), rest.end(), rng);
      for (const auto& [u, v] : rest) {
        if (static_cast<std::int64_t>(edges.size()) >= p.m) break;
        add(u, v);
      }
    }
  } else {
    const auto sizes = layer_sizes(p.n);
    std::vector<int> start(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) start[i + 1] = start[i] + sizes[i];
    std::vector<EdgePair> pool;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
      for (int a = start[i]; a < start[i + 1]; ++a) {
        for (int b = start[i + 1]; b < start[i + 2]; ++b) {
          pool.emplace_back(a, b);
          pool.emplace_back(b, a);
        }
      }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    for (std::int64_t i = 0; i < p.m; ++i) add(pool[i].first, pool[i].second);
  }

  // Edge order in the file carries no information: shuffle it, then fix the
  // deletion order before any structure exists.
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t k = p.deletions < 0 ? order.size()
                                        : std::min<std::size_t>(order.size(), p.deletions);
  for (std::size_t i = 0; i < k; ++i) {
    TraceOp op;
    op.kind = OpKind::kDelete;
    op.a = edges[order[i]].first;
    op.b = edges[order[i]].second;
    w.trace.push_back(op);
  }
  return w;
}

}  // namespace dscc::io

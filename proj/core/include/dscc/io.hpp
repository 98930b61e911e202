#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dscc/types.hpp"

namespace dscc::io {

/// Malformed input, with the 1-based line it was found on.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct GraphData {
  int n = 0;
  std::vector<EdgePair> edges;

  bool operator==(const GraphData&) const = default;
};

/// "n m" header, then m lines "u v". Lines starting with '#' and blank lines
/// are skipped.
GraphData read_graph(std::istream& in);
void write_graph(std::ostream& out, const GraphData& g);

enum class OpKind {
  kDelete,        // D u v
  kQuery,         // Q u v
  kReach,         // R v
  kInsert,        // I u k, then k edge lines
  kDeleteVertex,  // DV u
  kQueryFull,     // QF s v
};

struct TraceOp {
  OpKind kind = OpKind::kDelete;
  VertexId a = 0;
  VertexId b = 0;
  std::vector<EdgePair> edges;  // kInsert only
  int line = 0;

  bool operator==(const TraceOp& o) const {
    return kind == o.kind && a == o.a && b == o.b && edges == o.edges;
  }
};

std::vector<TraceOp> read_trace(std::istream& in);
void write_trace(std::ostream& out, std::span<const TraceOp> ops);

struct GenParams {
  int n = 0;
  std::int64_t m = 0;
  std::string model = "gnm";  // gnm | cycle | cycle+chords | layered
  std::int64_t deletions = -1;  // -1 deletes every edge
  std::uint64_t seed = 1;
};

struct Workload {
  GraphData graph;
  std::vector<TraceOp> trace;
};

/// Largest m the model can produce for n vertices without repeated edges.
std::int64_t model_capacity(const std::string& model, int n);

/// Throws InputError for unknown models or infeasible sizes. The deletion
/// order is a uniform permutation drawn from `seed` alone.
Workload generate(const GenParams& p);

}  // namespace dscc::io

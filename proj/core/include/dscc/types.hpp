#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace dscc {

using VertexId = std::int32_t;
using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using ViewId = std::int32_t;

inline constexpr std::int32_t kNone = -1;
inline constexpr ViewId kNoView = -1;

/// Sentinel for "farther than the depth cap". Distinct from any finite level.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

using EdgePair = std::pair<VertexId, VertexId>;

/// kOut follows edges forward from a root, kIn follows them backward.
enum class Direction { kOut = 0, kIn = 1 };

/// Bad user input: out-of-range vertex, missing edge, malformed file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal invariant failed. Always a bug in this library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dscc

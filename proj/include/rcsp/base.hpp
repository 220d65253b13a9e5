#pragma once

// Shared scalar types, the error taxonomy, and the enumeration limits that
// keep every exhaustive routine at desk scale.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcsp {

using Value = int;                 // domain element, canonically 0..|D|-1
using Tuple = std::vector<Value>;

// Inputs that break a contract: mismatched arities, out-of-range values,
// unknown names, assignments that do not satisfy a formula.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration guard tripped; the request is well-formed but too large.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejected text input; positions are 1-based.
struct parse_error : std::runtime_error {
  int line;
  int column;
  parse_error(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ")"),
        line(line_), column(column_) {}
};

namespace limits {
constexpr std::uint64_t relation_cells = std::uint64_t{1} << 24;    // |D|^r per relation
constexpr std::uint64_t operation_cells = std::uint64_t{1} << 20;   // |D|^k per operation table
constexpr std::uint64_t invariance_budget = std::uint64_t{1} << 26; // |R|^k row sequences
constexpr std::uint64_t solution_cells = std::uint64_t{1} << 22;    // |D|^n per instance
constexpr int scb_max_arity = 10;      // Bell(10) = 115975 coordinate partitions
constexpr int express_max_arity = 8;
constexpr std::uint64_t max_orders = 40320;  // 8! candidate total orders
}  // namespace limits

// d^e with saturation well above every limit, so comparisons stay exact.
inline std::uint64_t checked_pow(std::uint64_t d, std::uint64_t e) {
  constexpr std::uint64_t big = std::uint64_t{1} << 62;
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (d != 0 && out > big / d) return big;
    out *= d;
  }
  return out;
}

inline std::string join_values(const Tuple& t, char sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << sep;
    os << t[i];
  }
  return os.str();
}

}  // namespace rcsp

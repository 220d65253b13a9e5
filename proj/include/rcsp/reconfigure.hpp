#pragma once

// Solving reconfiguration instances: greedy descent to the component's
// locally minimal solution when an ordered-Maltsev order is available, and a
// breadth-first oracle over the full solution graph as the ground truth.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "rcsp/classify.hpp"
#include "rcsp/formula.hpp"
#include "rcsp/relation.hpp"

namespace rcsp {

struct DescentResult {
  Assignment minimum;
  int steps = 0;
};

// Repeatedly scan variables in declaration order; for the current variable
// try replacement values from the least of ord upward and take the first
// strictly smaller one that keeps the assignment satisfying, then restart
// the scan. Stops at a locally minimal solution.
inline DescentResult descend_to_minimum(const Formula& f, const TotalOrder& ord,
                                        const Assignment& start) {
  if (ord.size() != f.domain_size())
    throw validation_error("order size must match domain");
  if (!satisfies(f, start))
    throw validation_error("assignment does not satisfy the formula");
  DescentResult res{start, 0};
  int n = f.variable_count();
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < n && !moved; ++i) {
      Value cur = res.minimum[i];
      for (int p = 0; p < ord.pos[cur]; ++p) {
        res.minimum[i] = ord.perm[p];
        if (satisfies(f, res.minimum)) {
          ++res.steps;
          moved = true;
          break;
        }
      }
      if (!moved) res.minimum[i] = cur;
    }
  }
  return res;
}

enum class Answer { yes, no };
enum class Method { greedy, bfs };

struct SolveResult {
  Answer answer = Answer::no;
  Method method = Method::greedy;
  bool heuristic = false;  // set when invariance was not verified by the caller
  std::optional<Assignment> s_min, t_min;
  int steps_s = 0, steps_t = 0;           // greedy descent lengths
  std::uint64_t visited = 0;              // oracle: solutions explored
  std::optional<std::vector<Assignment>> path;
  std::optional<TotalOrder> order;
};

// Sound and complete when the instance's language is invariant under the
// ordered partial Maltsev operation for ord; pass heuristic=true otherwise
// so reports carry the caveat.
inline SolveResult solve_greedy(const RcspInstance& inst, const TotalOrder& ord,
                                bool heuristic = false) {
  SolveResult res;
  res.method = Method::greedy;
  res.heuristic = heuristic;
  res.order = ord;
  DescentResult s = descend_to_minimum(inst.formula, ord, inst.start);
  DescentResult t = descend_to_minimum(inst.formula, ord, inst.target);
  res.answer = (s.minimum == t.minimum) ? Answer::yes : Answer::no;
  res.s_min = std::move(s.minimum);
  res.t_min = std::move(t.minimum);
  res.steps_s = s.steps;
  res.steps_t = t.steps;
  return res;
}

// Exhaustive truth: breadth-first search over the solution graph.
inline SolveResult solve_bfs_oracle(const RcspInstance& inst, bool want_path = false,
                                    std::uint64_t cap = limits::solution_cells) {
  const Formula& f = inst.formula;
  int n = f.variable_count();
  int d = f.domain_size();
  std::uint64_t space = checked_pow(d, n);
  if (space > cap) throw cap_error("instance too large for enumeration");

  auto encode = [&](const Assignment& a) {
    std::uint64_t idx = 0;
    for (Value v : a) idx = idx * d + static_cast<std::uint64_t>(v);
    return idx;
  };
  std::vector<char> sat(static_cast<std::size_t>(space), 0);
  {
    Assignment a(n, 0);
    for (std::uint64_t idx = 0;; ++idx) {
      if (satisfies(f, a)) sat[idx] = 1;
      int i = n - 1;
      while (i >= 0 && a[i] == d - 1) a[i--] = 0;
      if (i < 0) break;
      ++a[i];
    }
  }

  SolveResult res;
  res.method = Method::bfs;
  std::uint64_t s = encode(inst.start), t = encode(inst.target);
  std::vector<std::int64_t> parent;
  if (want_path) parent.assign(static_cast<std::size_t>(space), -1);
  std::vector<char> seen(static_cast<std::size_t>(space), 0);
  std::deque<std::uint64_t> queue{s};
  seen[s] = 1;
  bool found = (s == t);
  while (!queue.empty() && !found) {
    std::uint64_t cur = queue.front();
    queue.pop_front();
    ++res.visited;
    // place-value arithmetic: coordinate i has weight d^(n-1-i)
    std::uint64_t weight = 1;
    for (int i = n - 1; i >= 0; --i) {
      Value cv = static_cast<Value>(cur / weight % static_cast<std::uint64_t>(d));
      std::uint64_t base = cur - static_cast<std::uint64_t>(cv) * weight;
      for (Value v = 0; v < d; ++v) {
        if (v == cv) continue;
        std::uint64_t nb = base + static_cast<std::uint64_t>(v) * weight;
        if (!sat[nb] || seen[nb]) continue;
        seen[nb] = 1;
        if (want_path) parent[nb] = static_cast<std::int64_t>(cur);
        if (nb == t) {
          found = true;
          break;
        }
        queue.push_back(nb);
      }
      if (found) break;
      weight *= static_cast<std::uint64_t>(d);
    }
  }
  res.answer = found ? Answer::yes : Answer::no;
  if (found && want_path) {
    auto decode = [&](std::uint64_t idx) {
      Assignment a(n);
      for (int i = n - 1; i >= 0; --i) {
        a[i] = static_cast<Value>(idx % static_cast<std::uint64_t>(d));
        idx /= static_cast<std::uint64_t>(d);
      }
      return a;
    };
    std::vector<Assignment> path;
    for (std::int64_t cur = static_cast<std::int64_t>(t);;) {
      path.push_back(decode(static_cast<std::uint64_t>(cur)));
      if (static_cast<std::uint64_t>(cur) == s) break;
      cur = parent[static_cast<std::size_t>(cur)];
    }
    std::reverse(path.begin(), path.end());
    res.path = std::move(path);
  }
  return res;
}

// Greedy with a verified order when one exists, otherwise the oracle when the
// assignment space is within the enumeration cap.
inline SolveResult solve_auto(const RcspInstance& inst) {
  const ConstraintLanguage& lang = inst.formula.language();
  std::optional<TotalOrder> order;
  try {
    OrderSearchResult search = find_ordered_maltsev_order(lang);
    order = search.order;
  } catch (const cap_error&) {
    // domain too large for the order search; fall through to the oracle
  }
  if (order) return solve_greedy(inst, *order, false);
  std::uint64_t space =
      checked_pow(inst.formula.domain_size(), inst.formula.variable_count());
  if (space > limits::solution_cells)
    throw cap_error("no method applies: no invariant order and the instance "
                    "is too large for enumeration");
  return solve_bfs_oracle(inst);
}

// True when no single-variable replacement by an ord-smaller value keeps the
// assignment inside the solution set.
inline bool is_locally_minimal(const Relation& solutions, const TotalOrder& ord,
                               const Tuple& t) {
  Tuple probe = t;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (int p = 0; p < ord.pos[t[i]]; ++p) {
      probe[i] = ord.perm[p];
      if (solutions.contains(probe)) return false;
    }
    probe[i] = t[i];
  }
  return true;
}

}  // namespace rcsp

#pragma once

// Rectangularity checks for digraphs: the one-step condition, the k-step
// reachability condition, and total rectangularity decided by iterating the
// reach-set state vector until it repeats.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rcsp/relation.hpp"

namespace rcsp {

struct RectangularityWitness {
  Value u, w, v, x;  // (u,w), (v,w), (v,x) are arcs but (u,x) is not
};

struct RectangularityResult {
  bool rectangular = true;
  std::optional<RectangularityWitness> witness;
};

// (u,w),(v,w),(v,x) in A implies (u,x) in A.
inline RectangularityResult is_rectangular(const Digraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<Value>> out(n), in(n);
  for (const Tuple& a : g.arcs.tuples()) {
    out[a[0]].push_back(a[1]);
    in[a[1]].push_back(a[0]);
  }
  for (const Tuple& a : g.arcs.tuples()) {
    Value v = a[0], w = a[1];
    for (Value u : in[w])
      for (Value x : out[v])
        if (!g.has_arc(u, x)) return {false, RectangularityWitness{u, w, v, x}};
  }
  return {};
}

namespace detail {

// one bitmask row per vertex, n <= 64 kept in a single word block each
using ReachState = std::vector<std::vector<std::uint64_t>>;

inline ReachState adjacency_state(const Digraph& g) {
  int n = g.vertex_count();
  std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  ReachState s(n, std::vector<std::uint64_t>(words, 0));
  for (const Tuple& a : g.arcs.tuples())
    s[a[0]][a[1] / 64] |= std::uint64_t{1} << (a[1] % 64);
  return s;
}

// rows of next = union over set bits of rows of adj
inline ReachState reach_step(const ReachState& cur, const ReachState& adj) {
  int n = static_cast<int>(cur.size());
  std::size_t words = cur.empty() ? 0 : cur[0].size();
  ReachState nxt(n, std::vector<std::uint64_t>(words, 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (cur[u][v / 64] >> (v % 64) & 1)
        for (std::size_t w = 0; w < words; ++w) nxt[u][w] |= adj[v][w];
  return nxt;
}

// first vertex pair whose reach sets overlap without being equal
inline std::optional<std::pair<Value, Value>> overlap_witness(const ReachState& s) {
  int n = static_cast<int>(s.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool equal = true, disjoint = true;
      for (std::size_t w = 0; w < s[u].size(); ++w) {
        if (s[u][w] != s[v][w]) equal = false;
        if (s[u][w] & s[v][w]) disjoint = false;
      }
      if (!equal && !disjoint) return std::make_pair(u, v);
    }
  return std::nullopt;
}

}  // namespace detail

struct KRectangularityResult {
  bool holds = true;
  std::optional<std::pair<Value, Value>> witness;  // u, v with overlapping unequal reach sets
};

// all pairs of exact-k-step reach sets are equal or disjoint
inline KRectangularityResult is_k_rectangular(const Digraph& g, int k) {
  if (k < 1) throw validation_error("k must be positive");
  detail::ReachState adj = detail::adjacency_state(g);
  detail::ReachState cur = adj;
  for (int i = 1; i < k; ++i) cur = detail::reach_step(cur, adj);
  if (auto w = detail::overlap_witness(cur)) return {false, w};
  return {};
}

struct TotalRectangularityCertificate {
  int preperiod = 0;  // states strictly before the cycle starts
  int period = 0;
  int max_k = 0;      // last k examined; states cycle from here on
};

struct TotalRectangularityResult {
  bool holds = true;
  std::optional<int> failing_k;
  std::optional<std::pair<Value, Value>> witness;
  TotalRectangularityCertificate certificate;  // filled when holds
};

// k-rectangular for every k >= 1. The reach-state sequence is eventually
// periodic, so checking until the first repeated state is exhaustive.
inline TotalRectangularityResult is_totally_rectangular(const Digraph& g,
                                                        std::uint64_t guard = 0) {
  int n = g.vertex_count();
  if (guard == 0)
    guard = checked_pow(2, static_cast<std::uint64_t>(n)) * static_cast<std::uint64_t>(n);
  detail::ReachState adj = detail::adjacency_state(g);
  detail::ReachState cur = adj;
  std::map<detail::ReachState, int> seen;
  for (int k = 1;; ++k) {
    if (static_cast<std::uint64_t>(k) > guard)
      throw cap_error("iteration guard exceeded");
    if (auto w = detail::overlap_witness(cur)) return {false, k, w, {}};
    auto [it, fresh] = seen.emplace(cur, k);
    if (!fresh) {
      TotalRectangularityResult res;
      res.certificate = {it->second - 1, k - it->second, k};
      return res;
    }
    cur = detail::reach_step(cur, adj);
  }
}

}  // namespace rcsp

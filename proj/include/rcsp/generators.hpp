#pragma once

// Named relation and digraph families used throughout the test corpus, plus
// a seeded min-closed relation sampler with a fully specified generator
// (splitmix64) so output is identical across platforms.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rcsp/relation.hpp"

namespace rcsp {

// splitmix64: the 64-bit mixer from a fixed seed; deterministic everywhere.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // modulo draw; bias is irrelevant at test scale and keeps the stream simple
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// ----- minimally not-safely-componentwise-bijunctive family -----

// r+2 tuples: start from the alternating tuple, flip coordinates 1..r in
// turn, then flip the first coordinate once more. The solution graph is a
// single path, yet majority escapes the set.
inline Relation gen_m_family(int r) {
  if (r < 3) throw validation_error("family needs arity at least 3");
  std::vector<Tuple> ts;
  Tuple cur(r);
  for (int i = 0; i < r; ++i) cur[i] = (i % 2 == 0) ? 0 : 1;
  ts.push_back(cur);
  for (int i = 0; i < r; ++i) {
    cur[i] = 1 - cur[i];
    ts.push_back(cur);
  }
  cur[0] = 1 - cur[0];
  ts.push_back(cur);
  return Relation(2, r, std::move(ts));
}

// ----- digraph families -----

// vertices 0..p-1, edges between i and j when q <= |i-j| <= p-q
inline Digraph gen_circular_clique(int p, int q) {
  if (q < 1 || p <= q) throw validation_error("circular clique needs p > q > 0");
  if (p < 2 * q) throw validation_error("circular clique needs p >= 2q");
  std::vector<std::pair<Value, Value>> edges;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      int diff = j - i;
      if (diff >= q && diff <= p - q) edges.emplace_back(i, j);
    }
  return Digraph::from_edges(p, edges);
}

inline Digraph gen_transitive_tournament(int n, bool reflexive) {
  if (n < 2) throw validation_error("tournament needs at least two vertices");
  std::vector<std::pair<Value, Value>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j && !reflexive) continue;
      arcs.emplace_back(i, j);
    }
  return Digraph::from_arcs(n, arcs);
}

// the two orientations of the 4-cycle that keep it totally rectangular:
// 1 = two directed paths 0->1->3 and 0->2->3, 2 = sources 0,3 into sinks 1,2
inline Digraph gen_c4_orientation(int which) {
  if (which == 1) return Digraph::from_arcs(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  if (which == 2) return Digraph::from_arcs(4, {{0, 1}, {0, 2}, {3, 1}, {3, 2}});
  throw validation_error("orientation must be 1 or 2");
}

// undirected n-cycle 0-1-...-(n-1)-0
inline Digraph gen_cycle(int n) {
  if (n < 3) throw validation_error("cycle needs at least three vertices");
  std::vector<std::pair<Value, Value>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Digraph::from_edges(n, edges);
}

inline Digraph reflexive_closure(const Digraph& g) {
  std::vector<Tuple> ts = g.arcs.tuples();
  for (Value v = 0; v < g.vertex_count(); ++v) ts.push_back({v, v});
  return Digraph(Relation(g.vertex_count(), 2, std::move(ts)));
}

// ----- named Boolean relations -----

inline Relation gen_named_boolean(const std::string& name) {
  auto rel = [](std::vector<Tuple> ts, int arity) { return Relation(2, arity, std::move(ts)); };
  if (name == "OR") return rel({{0, 1}, {1, 0}, {1, 1}}, 2);
  if (name == "NAND") return rel({{0, 0}, {0, 1}, {1, 0}}, 2);
  if (name == "IMPL") return rel({{0, 0}, {0, 1}, {1, 1}}, 2);
  if (name == "NAE")
    return rel({{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}}, 3);
  if (name == "R00") return rel({{0, 1}, {1, 0}, {1, 1}}, 2);
  if (name == "R01") return rel({{0, 0}, {1, 0}, {1, 1}}, 2);
  if (name == "R10") return rel({{0, 0}, {0, 1}, {1, 1}}, 2);
  if (name == "R11") return rel({{0, 0}, {0, 1}, {1, 0}}, 2);
  if (name == "EQ") return rel({{0, 0}, {1, 1}}, 2);
  if (name == "NEQ") return rel({{0, 1}, {1, 0}}, 2);
  if (name == "C0") return rel({{0}}, 1);
  if (name == "C1") return rel({{1}}, 1);
  throw validation_error("unknown named relation: " + name);
}

// ----- random min-closed relations -----

// Sample each tuple independently with the given density from a splitmix64
// stream, force the all-least tuple when the draw is empty, then close under
// pairwise coordinatewise minimum for the natural order.
inline Relation gen_random_min_closed(int domain_size, int arity, std::uint64_t seed,
                                      double density) {
  if (density < 0.0 || density > 1.0) throw validation_error("density must be in [0,1]");
  std::uint64_t cells = checked_pow(domain_size, arity);
  if (cells > limits::relation_cells) throw cap_error("relation exceeds the enumeration cap");
  SplitMix64 rng(seed);
  std::vector<Tuple> ts;
  Tuple t(arity, 0);
  for (std::uint64_t idx = 0; idx < cells; ++idx) {
    if (rng.unit() < density) ts.push_back(t);
    int i = arity - 1;
    while (i >= 0 && t[i] == domain_size - 1) t[i--] = 0;
    if (i >= 0) ++t[i];
  }
  if (ts.empty()) ts.push_back(Tuple(arity, 0));

  std::vector<Tuple> closed = ts;
  std::sort(closed.begin(), closed.end());
  closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  for (std::size_t i = 0; i < closed.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Tuple m(arity);
      for (int k = 0; k < arity; ++k) m[k] = std::min(closed[i][k], closed[j][k]);
      auto it = std::lower_bound(closed.begin(), closed.end(), m);
      if (it == closed.end() || *it != m) {
        closed.insert(it, std::move(m));
        i = 0;  // restart; the set stays small at test scale
        j = 0;
        break;
      }
    }
  return Relation(domain_size, arity, std::move(closed));
}

// ----- family dispatch -----

struct FamilySpec {
  enum class Kind {
    m_family,
    circular_clique,
    transitive_tournament,
    c4_orientation,
    cycle,
    named_boolean,
    random_min_closed
  };
  Kind kind = Kind::named_boolean;
  int r = 3;           // m_family arity, cycle/tournament size
  int p = 6, q = 3;    // circular clique parameters
  int which = 1;       // c4 orientation
  bool reflexive = false;
  std::string name = "OR";
  int domain_size = 2;
  int arity = 2;
  std::uint64_t seed = 0;
  double density = 0.5;
};

inline std::variant<Relation, Digraph> gen(const FamilySpec& spec) {
  using K = FamilySpec::Kind;
  switch (spec.kind) {
    case K::m_family: return gen_m_family(spec.r);
    case K::circular_clique: return gen_circular_clique(spec.p, spec.q);
    case K::transitive_tournament: return gen_transitive_tournament(spec.r, spec.reflexive);
    case K::c4_orientation: return gen_c4_orientation(spec.which);
    case K::cycle: return gen_cycle(spec.r);
    case K::named_boolean: return gen_named_boolean(spec.name);
    case K::random_min_closed:
      return gen_random_min_closed(spec.domain_size, spec.arity, spec.seed, spec.density);
  }
  throw validation_error("unknown family");
}

}  // namespace rcsp

#pragma once

// Finite domains, total orders, relations as explicit sorted tuple sets,
// substitution patterns, and the solution-graph primitives (Hamming metric,
// connected components).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcsp/base.hpp"

namespace rcsp {

// ----- domains and orders -----

struct FiniteDomain {
  int size = 2;
  std::vector<std::string> labels;  // optional display names, one per element

  FiniteDomain() = default;
  explicit FiniteDomain(int size_, std::vector<std::string> labels_ = {})
      : size(size_), labels(std::move(labels_)) {
    if (size < 2) throw validation_error("domain must have at least two elements");
    if (!labels.empty() && static_cast<int>(labels.size()) != size)
      throw validation_error("label count must match domain size");
  }

  std::string label(Value v) const {
    if (v < 0 || v >= size) throw validation_error("value outside domain");
    return labels.empty() ? std::to_string(v) : labels[v];
  }
};

// A permutation of 0..d-1, least element first.
struct TotalOrder {
  std::vector<Value> perm;
  std::vector<int> pos;  // pos[v] = rank of v, 0 = least

  explicit TotalOrder(std::vector<Value> perm_) : perm(std::move(perm_)) {
    int d = static_cast<int>(perm.size());
    if (d < 2) throw validation_error("order needs at least two elements");
    pos.assign(d, -1);
    for (int i = 0; i < d; ++i) {
      Value v = perm[i];
      if (v < 0 || v >= d || pos[v] != -1)
        throw validation_error("order must be a permutation of 0..d-1");
      pos[v] = i;
    }
  }

  static TotalOrder natural(int d) {
    std::vector<Value> p(d);
    for (int i = 0; i < d; ++i) p[i] = i;
    return TotalOrder(std::move(p));
  }

  int size() const { return static_cast<int>(perm.size()); }
  bool less(Value a, Value b) const { return pos[a] < pos[b]; }
  bool leq(Value a, Value b) const { return pos[a] <= pos[b]; }
  Value min_of(Value a, Value b) const { return less(a, b) ? a : b; }
  Value least() const { return perm[0]; }
  std::string to_string() const {
    Tuple t(perm.begin(), perm.end());
    return join_values(t, ',');
  }
};

// ----- tuples -----

inline int hamming_distance(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) throw validation_error("incompatible tuples");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++d;
  return d;
}

// ----- relations -----

class Relation {
 public:
  Relation(int domain_size, int arity, std::vector<Tuple> tuples)
      : domain_size_(domain_size), arity_(arity), tuples_(std::move(tuples)) {
    if (domain_size_ < 2) throw validation_error("domain must have at least two elements");
    if (arity_ < 1) throw validation_error("arity must be positive");
    if (checked_pow(domain_size_, arity_) > limits::relation_cells)
      throw cap_error("relation exceeds the enumeration cap");
    for (const Tuple& t : tuples_) {
      if (static_cast<int>(t.size()) != arity_)
        throw validation_error("tuple arity mismatch");
      for (Value v : t)
        if (v < 0 || v >= domain_size_)
          throw validation_error("tuple value outside domain");
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  }

  static Relation empty(int domain_size, int arity) {
    return Relation(domain_size, arity, {});
  }

  static Relation full(int domain_size, int arity) {
    std::vector<Tuple> ts;
    Tuple t(arity, 0);
    for (;;) {
      ts.push_back(t);
      int i = arity - 1;
      while (i >= 0 && t[i] == domain_size - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
    return Relation(domain_size, arity, std::move(ts));
  }

  int domain_size() const { return domain_size_; }
  int arity() const { return arity_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }  // sorted lex, unique
  std::size_t size() const { return tuples_.size(); }
  bool is_empty() const { return tuples_.empty(); }

  bool contains(const Tuple& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
  }

  bool operator==(const Relation& o) const {
    return domain_size_ == o.domain_size_ && arity_ == o.arity_ && tuples_ == o.tuples_;
  }
  bool operator!=(const Relation& o) const { return !(*this == o); }

 private:
  int domain_size_;
  int arity_;
  std::vector<Tuple> tuples_;
};

// Boolean complement of every coordinate; swaps the roles of 0 and 1.
inline Relation dual(const Relation& r) {
  if (r.domain_size() != 2) throw validation_error("non-Boolean domain");
  std::vector<Tuple> out;
  out.reserve(r.size());
  for (Tuple t : r.tuples()) {
    for (Value& v : t) v = 1 - v;
    out.push_back(std::move(t));
  }
  return Relation(2, r.arity(), std::move(out));
}

// Multiset projection of R onto the given coordinate list (repeats allowed),
// returned as a sorted deduplicated tuple set.
inline std::vector<Tuple> projection(const Relation& r, const std::vector<int>& coords) {
  for (int c : coords)
    if (c < 0 || c >= r.arity()) throw validation_error("projection coordinate out of range");
  std::vector<Tuple> out;
  out.reserve(r.size());
  for (const Tuple& t : r.tuples()) {
    Tuple p(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) p[i] = t[coords[i]];
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Relation product(const Relation& a, const Relation& b) {
  if (a.domain_size() != b.domain_size()) throw validation_error("domain mismatch");
  std::vector<Tuple> out;
  out.reserve(a.size() * b.size());
  for (const Tuple& s : a.tuples())
    for (const Tuple& t : b.tuples()) {
      Tuple c = s;
      c.insert(c.end(), t.begin(), t.end());
      out.push_back(std::move(c));
    }
  return Relation(a.domain_size(), a.arity() + b.arity(), std::move(out));
}

// ----- patterns -----

// One coordinate of a substitution: either a small-integer variable id or a
// domain constant. Variables display as x1, x2, ... (id + 1).
struct PatternEntry {
  int var = -1;       // >= 0 means variable id
  Value constant = 0; // used when var < 0

  static PatternEntry variable(int id) {
    if (id < 0) throw validation_error("variable id must be nonnegative");
    PatternEntry e;
    e.var = id;
    return e;
  }
  static PatternEntry constant_of(Value c) {
    PatternEntry e;
    e.var = -1;
    e.constant = c;
    return e;
  }
  bool is_var() const { return var >= 0; }

  bool operator==(const PatternEntry& o) const {
    return var == o.var && (is_var() || constant == o.constant);
  }
};

struct Pattern {
  std::vector<PatternEntry> entries;

  static Pattern identity(int arity) {
    Pattern p;
    for (int i = 0; i < arity; ++i) p.entries.push_back(PatternEntry::variable(i));
    return p;
  }

  // Distinct variable ids in order of first occurrence.
  std::vector<int> distinct_vars() const {
    std::vector<int> vars;
    for (const PatternEntry& e : entries)
      if (e.is_var() && std::find(vars.begin(), vars.end(), e.var) == vars.end())
        vars.push_back(e.var);
    return vars;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) s += ',';
      if (entries[i].is_var())
        s += "x" + std::to_string(entries[i].var + 1);
      else
        s += "#" + std::to_string(entries[i].constant);
    }
    return s;
  }

  // Inverse of to_string: comma-separated x<k> and #<c> items.
  static Pattern parse(const std::string& text) {
    Pattern p;
    std::size_t i = 0;
    while (i <= text.size()) {
      std::size_t j = text.find(',', i);
      if (j == std::string::npos) j = text.size();
      std::string item = text.substr(i, j - i);
      if (item.empty()) throw validation_error("empty pattern item");
      if (item[0] == 'x') {
        std::size_t used = 0;
        int k = std::stoi(item.substr(1), &used);
        if (used + 1 != item.size() || k < 1) throw validation_error("bad pattern variable: " + item);
        p.entries.push_back(PatternEntry::variable(k - 1));
      } else if (item[0] == '#') {
        std::size_t used = 0;
        int c = std::stoi(item.substr(1), &used);
        if (used + 1 != item.size() || c < 0) throw validation_error("bad pattern constant: " + item);
        p.entries.push_back(PatternEntry::constant_of(c));
      } else {
        throw validation_error("bad pattern item: " + item);
      }
      if (j == text.size()) break;
      i = j + 1;
    }
    if (p.entries.empty()) throw validation_error("empty pattern");
    return p;
  }

  bool operator==(const Pattern& o) const { return entries == o.entries; }
};

// R'(v_1..v_q) = R(xi_1..xi_r): substitute constants, identify repeated
// variables, and project onto the distinct variables in first-occurrence
// order. The result keeps R's domain.
inline Relation apply_pattern(const Relation& r, const Pattern& p,
                              bool allow_no_vars = false) {
  if (static_cast<int>(p.entries.size()) != r.arity())
    throw validation_error("pattern length must match relation arity");
  for (const PatternEntry& e : p.entries)
    if (!e.is_var() && (e.constant < 0 || e.constant >= r.domain_size()))
      throw validation_error("pattern constant outside domain");
  std::vector<int> vars = p.distinct_vars();
  if (vars.empty() && !allow_no_vars)
    throw validation_error("pattern has no variables");
  int q = static_cast<int>(vars.size());

  std::vector<Tuple> out;
  for (const Tuple& t : r.tuples()) {
    Tuple img(q, -1);
    bool ok = true;
    for (int i = 0; i < r.arity() && ok; ++i) {
      const PatternEntry& e = p.entries[i];
      if (!e.is_var()) {
        ok = (t[i] == e.constant);
      } else {
        int slot = static_cast<int>(std::find(vars.begin(), vars.end(), e.var) - vars.begin());
        if (img[slot] == -1)
          img[slot] = t[i];
        else
          ok = (img[slot] == t[i]);
      }
    }
    if (ok && q > 0) out.push_back(std::move(img));
  }
  if (q == 0) {
    // explicit opt-in: a fully constant pattern degenerates to a 0-ary test;
    // report it as a unary relation that is empty or the matched constant.
    bool matched = false;
    for (const Tuple& t : r.tuples()) {
      bool ok = true;
      for (int i = 0; i < r.arity() && ok; ++i) ok = (t[i] == p.entries[i].constant);
      if (ok) { matched = true; break; }
    }
    std::vector<Tuple> unary;
    if (matched) unary.push_back({0});
    return Relation(r.domain_size(), 1, std::move(unary));
  }
  return Relation(r.domain_size(), q, std::move(out));
}

// plug q into the variable slots of p; apply_pattern(R, compose(p, q))
// equals apply_pattern(apply_pattern(R, p), q)
inline Pattern compose_patterns(const Pattern& p, const Pattern& q) {
  std::vector<int> vars = p.distinct_vars();
  if (q.entries.size() != vars.size())
    throw validation_error("inner pattern length must match outer variable count");
  Pattern out;
  for (const PatternEntry& e : p.entries) {
    if (!e.is_var()) {
      out.entries.push_back(e);
    } else {
      int slot = static_cast<int>(std::find(vars.begin(), vars.end(), e.var) - vars.begin());
      out.entries.push_back(q.entries[slot]);
    }
  }
  return out;
}

// ----- solution graph primitives -----

// Components of the graph on R's tuples with edges at Hamming distance one.
// Components are listed by lexicographically least member; members sorted lex.
inline std::vector<std::vector<Tuple>> connected_components(const Relation& r) {
  const std::vector<Tuple>& ts = r.tuples();
  std::vector<char> seen(ts.size(), 0);
  std::vector<std::vector<Tuple>> comps;
  for (std::size_t s = 0; s < ts.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      comp.push_back(i);
      Tuple t = ts[i];
      for (int c = 0; c < r.arity(); ++c) {
        Value old = t[c];
        for (Value v = 0; v < r.domain_size(); ++v) {
          if (v == old) continue;
          t[c] = v;
          auto it = std::lower_bound(ts.begin(), ts.end(), t);
          if (it != ts.end() && *it == t) {
            std::size_t j = static_cast<std::size_t>(it - ts.begin());
            if (!seen[j]) {
              seen[j] = 1;
              queue.push_back(j);
            }
          }
        }
        t[c] = old;
      }
    }
    std::sort(comp.begin(), comp.end());
    std::vector<Tuple> members;
    members.reserve(comp.size());
    for (std::size_t i : comp) members.push_back(ts[i]);
    comps.push_back(std::move(members));
  }
  return comps;
}

// ----- digraphs -----

// A digraph is its arc relation; vertices are the relation's domain.
struct Digraph {
  Relation arcs;

  explicit Digraph(Relation arcs_) : arcs(std::move(arcs_)) {
    if (arcs.arity() != 2) throw validation_error("digraph needs a binary arc relation");
  }

  int vertex_count() const { return arcs.domain_size(); }
  bool has_arc(Value u, Value v) const { return arcs.contains({u, v}); }

  static Digraph from_arcs(int n, const std::vector<std::pair<Value, Value>>& as) {
    std::vector<Tuple> ts;
    ts.reserve(as.size());
    for (auto [u, v] : as) ts.push_back({u, v});
    return Digraph(Relation(n, 2, std::move(ts)));
  }

  // undirected edges become arcs in both directions
  static Digraph from_edges(int n, const std::vector<std::pair<Value, Value>>& es) {
    std::vector<Tuple> ts;
    ts.reserve(2 * es.size());
    for (auto [u, v] : es) {
      ts.push_back({u, v});
      ts.push_back({v, u});
    }
    return Digraph(Relation(n, 2, std::move(ts)));
  }
};

}  // namespace rcsp

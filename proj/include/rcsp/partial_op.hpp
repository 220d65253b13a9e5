#pragma once

// Partial operations as explicit dense tables, the (ordered) partial Maltsev
// and majority families, subfunction order, componentwise application, and
// invariance checking with lexicographically-first counterexamples.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcsp/language.hpp"
#include "rcsp/relation.hpp"

namespace rcsp {

class PartialOperation {
 public:
  PartialOperation(int domain_size, int arity)
      : domain_size_(domain_size), arity_(arity) {
    if (domain_size_ < 2) throw validation_error("domain must have at least two elements");
    if (arity_ < 1) throw validation_error("arity must be positive");
    std::uint64_t cells = checked_pow(domain_size_, arity_);
    if (cells > limits::operation_cells)
      throw cap_error("operation table exceeds the enumeration cap");
    table_.assign(static_cast<std::size_t>(cells), -1);
  }

  int domain_size() const { return domain_size_; }
  int arity() const { return arity_; }

  std::size_t index_of(const Tuple& key) const {
    if (static_cast<int>(key.size()) != arity_) throw validation_error("key arity mismatch");
    std::size_t idx = 0;
    for (Value v : key) {
      if (v < 0 || v >= domain_size_) throw validation_error("key value outside domain");
      idx = idx * domain_size_ + static_cast<std::size_t>(v);
    }
    return idx;
  }

  void define(const Tuple& key, Value out) {
    if (out < 0 || out >= domain_size_) throw validation_error("result value outside domain");
    std::size_t idx = index_of(key);
    if (table_[idx] != -1 && table_[idx] != out)
      throw validation_error("conflicting definition for one key");
    if (table_[idx] == -1) ++defined_;
    table_[idx] = static_cast<std::int16_t>(out);
  }

  // fast path used by the invariance scan; no bounds checks
  int lookup_raw(std::size_t idx) const { return table_[idx]; }

  std::optional<Value> apply(const Tuple& key) const {
    int v = table_[index_of(key)];
    if (v < 0) return std::nullopt;
    return v;
  }

  bool is_defined(const Tuple& key) const { return table_[index_of(key)] >= 0; }
  std::size_t domain_card() const { return defined_; }
  bool is_total() const { return defined_ == table_.size(); }

  bool is_idempotent() const {
    for (Value v = 0; v < domain_size_; ++v) {
      Tuple key(arity_, v);
      auto r = apply(key);
      if (!r || *r != v) return false;
    }
    return true;
  }

  // visit defined entries in lexicographic key order
  template <typename F>
  void for_each_defined(F&& fn) const {
    Tuple key(arity_, 0);
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
      if (table_[idx] >= 0) fn(key, static_cast<Value>(table_[idx]));
      int i = arity_ - 1;
      while (i >= 0 && key[i] == domain_size_ - 1) key[i--] = 0;
      if (i >= 0) ++key[i];
    }
  }

  bool operator==(const PartialOperation& o) const {
    return domain_size_ == o.domain_size_ && arity_ == o.arity_ && table_ == o.table_;
  }

 private:
  int domain_size_;
  int arity_;
  std::vector<std::int16_t> table_;  // -1 = undefined
  std::size_t defined_ = 0;
};

// ----- operation families -----

// dom = {(x,y,y)} u {(y,y,x)} over all x,y; value x on both shapes.
inline PartialOperation make_partial_maltsev(int domain_size) {
  PartialOperation f(domain_size, 3);
  for (Value x = 0; x < domain_size; ++x)
    for (Value y = 0; y < domain_size; ++y) {
      f.define({x, y, y}, x);
      f.define({y, y, x}, x);
    }
  return f;
}

// Partial Maltsev restricted to pairs with x <= y in the given order; the
// domain has exactly d^2 keys (both branch sets overlap on the constants).
inline PartialOperation make_ordered_maltsev(int domain_size, const TotalOrder& ord) {
  if (ord.size() != domain_size) throw validation_error("order size must match domain");
  PartialOperation f(domain_size, 3);
  for (Value x = 0; x < domain_size; ++x)
    for (Value y = 0; y < domain_size; ++y) {
      if (!ord.leq(x, y)) continue;
      f.define({x, y, y}, x);
      f.define({y, y, x}, x);
    }
  return f;
}

inline PartialOperation make_boolean_majority() {
  PartialOperation f(2, 3);
  for (Value a = 0; a < 2; ++a)
    for (Value b = 0; b < 2; ++b)
      for (Value c = 0; c < 2; ++c)
        f.define({a, b, c}, (a & b) | (b & c) | (a & c));
  return f;
}

// binary total minimum with respect to ord
inline PartialOperation make_min(int domain_size, const TotalOrder& ord) {
  if (ord.size() != domain_size) throw validation_error("order size must match domain");
  PartialOperation f(domain_size, 2);
  for (Value a = 0; a < domain_size; ++a)
    for (Value b = 0; b < domain_size; ++b)
      f.define({a, b}, ord.min_of(a, b));
  return f;
}

// ----- subfunctions and componentwise application -----

// f <= g: dom(f) is contained in dom(g) and values agree there.
inline bool is_subfunction(const PartialOperation& f, const PartialOperation& g) {
  if (f.domain_size() != g.domain_size() || f.arity() != g.arity())
    throw validation_error("subfunction comparison needs matching domain and arity");
  bool ok = true;
  f.for_each_defined([&](const Tuple& key, Value v) {
    if (!ok) return;
    auto gv = g.apply(key);
    if (!gv || *gv != v) ok = false;
  });
  return ok;
}

// Apply f to k rows of equal arity, coordinate by coordinate; undefined as a
// whole if any coordinate's key is outside dom(f).
inline std::optional<Tuple> apply_componentwise(const PartialOperation& f,
                                                const std::vector<Tuple>& rows) {
  if (static_cast<int>(rows.size()) != f.arity())
    throw validation_error("row count must match operation arity");
  if (rows.empty()) throw validation_error("no rows");
  std::size_t r = rows[0].size();
  for (const Tuple& t : rows)
    if (t.size() != r) throw validation_error("incompatible tuples");
  Tuple out(r);
  Tuple key(rows.size());
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) key[i] = rows[i][j];
    auto v = f.apply(key);
    if (!v) return std::nullopt;
    out[j] = *v;
  }
  return out;
}

// ----- invariance -----

struct InvarianceCounterexample {
  std::vector<Tuple> rows;  // k tuples of R, the operation's arguments
  Tuple escape;             // the componentwise image, not in R
};

struct InvarianceResult {
  bool invariant = true;
  std::optional<InvarianceCounterexample> counterexample;
};

// R is invariant under f when every defined componentwise application of f to
// tuples of R lands in R. Scans row sequences in lexicographic order, so the
// reported counterexample is the first one.
inline InvarianceResult is_invariant(const Relation& r, const PartialOperation& f,
                                     std::uint64_t budget = limits::invariance_budget) {
  if (r.domain_size() != f.domain_size())
    throw validation_error("relation and operation domains differ");
  const std::vector<Tuple>& ts = r.tuples();
  int k = f.arity();
  if (ts.empty()) return {};
  if (checked_pow(ts.size(), k) > budget) throw cap_error("budget exceeded");

  int arity = r.arity();
  int d = r.domain_size();
  std::vector<std::size_t> idx(k, 0);
  Tuple image(arity);
  for (;;) {
    bool defined = true;
    for (int j = 0; j < arity && defined; ++j) {
      std::size_t key = 0;
      for (int i = 0; i < k; ++i) key = key * d + static_cast<std::size_t>(ts[idx[i]][j]);
      int v = f.lookup_raw(key);
      if (v < 0)
        defined = false;
      else
        image[j] = v;
    }
    if (defined && !r.contains(image)) {
      InvarianceCounterexample cx;
      for (int i = 0; i < k; ++i) cx.rows.push_back(ts[idx[i]]);
      cx.escape = image;
      return {false, std::move(cx)};
    }
    int i = k - 1;
    while (i >= 0 && idx[i] + 1 == ts.size()) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return {};
}

struct LanguageInvariance {
  bool invariant = true;
  std::string member;  // first failing member, in language order
  InvarianceResult detail;
};

inline LanguageInvariance language_invariant(const ConstraintLanguage& lang,
                                             const PartialOperation& f,
                                             std::uint64_t budget = limits::invariance_budget) {
  for (const auto& [name, rel] : lang.members()) {
    InvarianceResult res = is_invariant(rel, f, budget);
    if (!res.invariant) return {false, name, std::move(res)};
  }
  return {};
}

}  // namespace rcsp

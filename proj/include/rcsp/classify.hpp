#pragma once

// Boolean language classification: (safely) OR-free and NAND-free via
// substitution patterns, (safely componentwise) bijunctive via majority,
// chain orientations, the tractability verdict, the ordered-Maltsev order
// search, min-closedness, and conjunctive expressibility with instance
// rewriting.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/language.hpp"
#include "rcsp/partial_op.hpp"
#include "rcsp/relation.hpp"

namespace rcsp {

struct PropertyWitness {
  std::optional<Pattern> pattern;   // substitution exhibiting the failure
  std::vector<Tuple> rows;          // operation arguments, when relevant
  std::optional<Tuple> escape;      // operation image outside the target set
};

struct PropertyResult {
  bool holds = true;
  std::optional<PropertyWitness> witness;
};

namespace detail {

inline Relation boolean_or() { return Relation(2, 2, {{0, 1}, {1, 0}, {1, 1}}); }
inline Relation boolean_nand() { return Relation(2, 2, {{0, 0}, {0, 1}, {1, 0}}); }

inline void require_boolean(const Relation& r) {
  if (r.domain_size() != 2) throw validation_error("non-Boolean domain");
}

// Scan every substitution with entries from {x1, x2, #0, #1} in which both
// variables occur; report the first one whose image equals target.
inline PropertyResult scan_combined_patterns(const Relation& r, const Relation& target) {
  require_boolean(r);
  int arity = r.arity();
  std::vector<int> digits(arity, 0);  // 0 = x1, 1 = x2, 2 = #0, 3 = #1
  for (;;) {
    bool has1 = false, has2 = false;
    for (int d : digits) {
      has1 |= (d == 0);
      has2 |= (d == 1);
    }
    if (has1 && has2) {
      Pattern p;
      for (int d : digits)
        p.entries.push_back(d < 2 ? PatternEntry::variable(d)
                                  : PatternEntry::constant_of(d - 2));
      if (apply_pattern(r, p) == target)
        return {false, PropertyWitness{std::move(p), {}, std::nullopt}};
    }
    int i = arity - 1;
    while (i >= 0 && digits[i] == 3) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  return {};
}

// Substitutions with x1 and x2 each exactly once and constants elsewhere.
inline PropertyResult scan_substitution_patterns(const Relation& r, const Relation& target) {
  require_boolean(r);
  int arity = r.arity();
  if (arity < 2) return {};
  for (int i = 0; i < arity; ++i)
    for (int j = 0; j < arity; ++j) {
      if (i == j) continue;
      std::vector<int> rest;
      for (int k = 0; k < arity; ++k)
        if (k != i && k != j) rest.push_back(k);
      Tuple consts(rest.size(), 0);
      for (;;) {
        Pattern p;
        p.entries.assign(arity, PatternEntry::constant_of(0));
        p.entries[i] = PatternEntry::variable(0);
        p.entries[j] = PatternEntry::variable(1);
        for (std::size_t k = 0; k < rest.size(); ++k)
          p.entries[rest[k]] = PatternEntry::constant_of(consts[k]);
        if (apply_pattern(r, p) == target)
          return {false, PropertyWitness{std::move(p), {}, std::nullopt}};
        int t = static_cast<int>(rest.size()) - 1;
        while (t >= 0 && consts[t] == 1) consts[t--] = 0;
        if (t < 0) break;
        ++consts[t];
      }
    }
  return {};
}

}  // namespace detail

// No substitution of constants into R yields OR (resp. NAND).
inline PropertyResult or_free(const Relation& r) {
  return detail::scan_substitution_patterns(r, detail::boolean_or());
}
inline PropertyResult nand_free(const Relation& r) {
  return detail::scan_substitution_patterns(r, detail::boolean_nand());
}

// No substitution mixing constants and variable identifications yields OR
// (resp. NAND); equivalent to invariance under the ordered partial Maltsev
// operation for 0 < 1 (resp. 1 < 0).
inline PropertyResult safely_or_free(const Relation& r) {
  return detail::scan_combined_patterns(r, detail::boolean_or());
}
inline PropertyResult safely_nand_free(const Relation& r) {
  return detail::scan_combined_patterns(r, detail::boolean_nand());
}

inline bool is_bijunctive(const Relation& r) {
  detail::require_boolean(r);
  return is_invariant(r, make_boolean_majority()).invariant;
}

// every connected component is bijunctive
inline PropertyResult is_componentwise_bijunctive(const Relation& r) {
  detail::require_boolean(r);
  PartialOperation maj = make_boolean_majority();
  for (const std::vector<Tuple>& comp : connected_components(r)) {
    Relation c(r.domain_size(), r.arity(), comp);
    InvarianceResult res = is_invariant(c, maj);
    if (!res.invariant)
      return {false, PropertyWitness{std::nullopt, res.counterexample->rows,
                                     res.counterexample->escape}};
  }
  return {};
}

// componentwise bijunctive after every identification of coordinates,
// including the identity identification
inline PropertyResult is_safely_cw_bijunctive(const Relation& r,
                                              int max_arity = limits::scb_max_arity) {
  detail::require_boolean(r);
  if (r.arity() > max_arity) throw cap_error("arity guard exceeded");
  PartialOperation maj = make_boolean_majority();
  int arity = r.arity();
  std::vector<int> rgs(arity, 0);  // restricted growth string = coordinate partition
  for (;;) {
    Pattern p;
    for (int b : rgs) p.entries.push_back(PatternEntry::variable(b));
    Relation image = apply_pattern(r, p);
    for (const std::vector<Tuple>& comp : connected_components(image)) {
      Relation c(image.domain_size(), image.arity(), comp);
      InvarianceResult res = is_invariant(c, maj);
      if (!res.invariant)
        return {false, PropertyWitness{std::move(p), res.counterexample->rows,
                                       res.counterexample->escape}};
    }
    int i = arity - 1;
    while (i > 0) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, rgs[j]);
      if (rgs[i] <= mx) break;
      --i;
    }
    if (i == 0) break;
    ++rgs[i];
    for (int j = i + 1; j < arity; ++j) rgs[j] = 0;
  }
  return {};
}

// ----- chain orientations -----

struct OrientationResult {
  bool admits = false;
  std::vector<char> orientation;  // '+' keeps, '-' reverses the coordinate
};

// Search sign vectors in lexicographic order ('+' before '-') for one that
// makes the coordinatewise order total on R's tuples.
inline OrientationResult admits_total_order(const Relation& r) {
  int arity = r.arity();
  const std::vector<Tuple>& ts = r.tuples();
  if (checked_pow(2, arity) > (std::uint64_t{1} << 24))
    throw cap_error("arity guard exceeded");
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << arity); ++code) {
    std::vector<char> o(arity);
    for (int i = 0; i < arity; ++i)
      o[i] = (code >> (arity - 1 - i)) & 1 ? '-' : '+';
    auto leq = [&](const Tuple& a, const Tuple& b) {
      for (int i = 0; i < arity; ++i) {
        if (o[i] == '+' ? a[i] > b[i] : a[i] < b[i]) return false;
      }
      return true;
    };
    bool total = true;
    for (std::size_t i = 0; i < ts.size() && total; ++i)
      for (std::size_t j = i + 1; j < ts.size() && total; ++j)
        total = leq(ts[i], ts[j]) || leq(ts[j], ts[i]);
    if (total) return {true, std::move(o)};
  }
  return {};
}

// ----- the language verdict -----

enum class Complexity { P, PSPACE_complete };

struct RelationVerdict {
  PropertyResult or_free;
  PropertyResult nand_free;
  PropertyResult safely_or_free;
  PropertyResult safely_nand_free;
  PropertyResult cw_bijunctive;
  PropertyResult safely_cw_bijunctive;
};

struct Verdict {
  std::vector<std::pair<std::string, RelationVerdict>> per_relation;
  bool tight = false;
  bool safely_tight = false;
  Complexity dichotomy = Complexity::PSPACE_complete;
};

// Per-relation flags plus the language-level verdict: connectivity is in P
// exactly when the language is safely tight, PSPACE-complete otherwise.
inline Verdict dichotomy_verdict(const ConstraintLanguage& lang) {
  if (lang.domain_size() != 2) throw validation_error("non-Boolean domain");
  Verdict v;
  bool all_cw = true, all_orf = true, all_nandf = true;
  bool all_scb = true, all_sof = true, all_snf = true;
  for (const auto& [name, rel] : lang.members()) {
    RelationVerdict rv;
    rv.or_free = or_free(rel);
    rv.nand_free = nand_free(rel);
    rv.safely_or_free = safely_or_free(rel);
    rv.safely_nand_free = safely_nand_free(rel);
    rv.cw_bijunctive = is_componentwise_bijunctive(rel);
    rv.safely_cw_bijunctive = is_safely_cw_bijunctive(rel);
    all_cw &= rv.cw_bijunctive.holds;
    all_orf &= rv.or_free.holds;
    all_nandf &= rv.nand_free.holds;
    all_scb &= rv.safely_cw_bijunctive.holds;
    all_sof &= rv.safely_or_free.holds;
    all_snf &= rv.safely_nand_free.holds;
    v.per_relation.emplace_back(name, std::move(rv));
  }
  v.tight = all_cw || all_orf || all_nandf;
  v.safely_tight = all_scb || all_sof || all_snf;
  v.dichotomy = v.safely_tight ? Complexity::P : Complexity::PSPACE_complete;
  return v;
}

// ----- ordered-Maltsev order search -----

struct OrderRejection {
  TotalOrder order;
  std::string member;
  InvarianceCounterexample counterexample;
};

struct OrderSearchResult {
  std::optional<TotalOrder> order;  // lexicographically first accepted order
  std::vector<OrderRejection> rejections;
  int rejected_count() const { return static_cast<int>(rejections.size()); }
};

inline OrderSearchResult find_ordered_maltsev_order(const ConstraintLanguage& lang,
                                                    std::uint64_t max_orders = limits::max_orders) {
  int d = lang.domain_size();
  std::uint64_t fact = 1;
  for (int i = 2; i <= d; ++i) fact *= static_cast<std::uint64_t>(i);
  if (fact > max_orders) throw cap_error("factorial guard exceeded");
  OrderSearchResult res;
  std::vector<Value> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  do {
    TotalOrder ord(perm);
    PartialOperation m = make_ordered_maltsev(d, ord);
    LanguageInvariance inv = language_invariant(lang, m);
    if (inv.invariant) {
      res.order = std::move(ord);
      return res;
    }
    res.rejections.push_back(
        {std::move(ord), inv.member, std::move(*inv.detail.counterexample)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return res;
}

inline OrderSearchResult find_ordered_maltsev_order(const Relation& r,
                                                    std::uint64_t max_orders = limits::max_orders) {
  ConstraintLanguage lang(r.domain_size());
  lang.add("R", r);
  return find_ordered_maltsev_order(lang, max_orders);
}

// closure under the binary minimum for ord; implies ordered-Maltsev invariance
inline LanguageInvariance is_min_closed(const ConstraintLanguage& lang, const TotalOrder& ord) {
  return language_invariant(lang, make_min(lang.domain_size(), ord));
}

// ----- conjunctive expressibility -----

struct ExpressResult {
  bool expressible = false;
  std::optional<Formula> formula;  // absent for the empty relation
  std::vector<Tuple> slack;        // canonical solutions outside R when not expressible
  bool empty_relation = false;
};

namespace detail {

inline Relation equality_relation(int d) {
  std::vector<Tuple> ts;
  for (Value v = 0; v < d; ++v) ts.push_back({v, v});
  return Relation(d, 2, std::move(ts));
}

// the member naming equality, adjoined under a fresh name when missing
inline std::pair<ConstraintLanguage, std::string> with_equality(const ConstraintLanguage& lang) {
  Relation eq = equality_relation(lang.domain_size());
  for (const auto& [name, rel] : lang.members())
    if (rel == eq) return {lang, name};
  ConstraintLanguage ext = lang;
  std::string name = "eq";
  int suffix = 0;
  while (ext.find(name)) name = "eq" + std::to_string(suffix++);
  ext.add(name, eq);
  return {ext, name};
}

}  // namespace detail

// Build the canonical conjunction over Γ ∪ {equality}: one atom per member
// and per argument tuple drawn from R's variables and the domain constants
// (at least one variable), kept exactly when R's projection satisfies it.
// R is expressible in the conjunction-plus-equality fragment iff the
// canonical conjunction's solution set equals R.
inline ExpressResult express_check(const Relation& r, const ConstraintLanguage& lang,
                                   int max_arity = limits::express_max_arity) {
  if (r.domain_size() != lang.domain_size())
    throw validation_error("relation and language domains differ");
  if (r.arity() > max_arity) throw cap_error("arity guard exceeded");
  if (r.is_empty()) {
    ExpressResult res;
    res.expressible = true;
    res.empty_relation = true;
    return res;
  }
  int n = r.arity();
  int d = r.domain_size();
  auto [work, eq_name] = detail::with_equality(lang);
  (void)eq_name;

  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));

  std::uint64_t work_budget = limits::invariance_budget;
  std::vector<Constraint> atoms;
  for (const auto& [mname, mrel] : work.members()) {
    int k = mrel.arity();
    std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n + d), k);
    if (count > work_budget / (r.size() ? r.size() : 1))
      throw cap_error("budget exceeded");
    // argument slots: 0..n-1 are variables, n..n+d-1 are constants
    std::vector<int> slot(k, 0);
    for (;;) {
      bool has_var = false;
      for (int s : slot) has_var |= (s < n);
      if (has_var) {
        bool sound = true;
        Tuple img(k);
        for (const Tuple& t : r.tuples()) {
          for (int i = 0; i < k; ++i) img[i] = slot[i] < n ? t[slot[i]] : slot[i] - n;
          if (!mrel.contains(img)) {
            sound = false;
            break;
          }
        }
        if (sound) {
          Constraint c;
          c.relation = mname;
          for (int s : slot)
            c.args.push_back(s < n ? Arg::variable(s) : Arg::constant_of(s - n));
          atoms.push_back(std::move(c));
        }
      }
      int i = k - 1;
      while (i >= 0 && slot[i] == n + d - 1) slot[i--] = 0;
      if (i < 0) break;
      ++slot[i];
    }
  }

  Formula canonical(work, vars, std::move(atoms));
  Relation sols = solution_relation(canonical);
  ExpressResult res;
  if (sols == r) {
    res.expressible = true;
    res.formula = std::move(canonical);
  } else {
    for (const Tuple& t : sols.tuples())
      if (!r.contains(t)) res.slack.push_back(t);
  }
  return res;
}

// Replace every constraint of the instance by the canonical conjunction of
// its relation over the target language, substituting the constraint's
// arguments; the equality relation must be a member of the target language.
inline RcspInstance rewrite_instance(const RcspInstance& inst,
                                     const ConstraintLanguage& target) {
  const Formula& f = inst.formula;
  if (f.domain_size() != target.domain_size())
    throw validation_error("instance and language domains differ");
  Relation eq = detail::equality_relation(target.domain_size());
  bool has_eq = false;
  for (const auto& [name, rel] : target.members()) {
    (void)name;
    has_eq |= (rel == eq);
  }
  if (!has_eq)
    throw validation_error("target language must contain the equality relation");

  std::vector<std::pair<std::string, Formula>> defs;  // member name -> canonical formula
  for (const auto& [name, rel] : f.language().members()) {
    ExpressResult ex = express_check(rel, target);
    if (!ex.expressible)
      throw validation_error("no ∧,=-reduction exists for " + name);
    defs.emplace_back(name, std::move(*ex.formula));
  }
  auto def_of = [&](const std::string& name) -> const Formula& {
    for (const auto& [n, df] : defs)
      if (n == name) return df;
    throw validation_error("unknown relation: " + name);
  };

  std::vector<Constraint> rewritten;
  for (const Constraint& c : f.constraints()) {
    const Formula& def = def_of(c.relation);
    for (const Constraint& atom : def.constraints()) {
      Constraint out;
      out.relation = atom.relation;
      bool any_var = false;
      Tuple fixed(atom.args.size());
      for (std::size_t i = 0; i < atom.args.size(); ++i) {
        Arg a = atom.args[i].is_var() ? c.args[atom.args[i].var] : atom.args[i];
        out.args.push_back(a);
        if (a.is_var())
          any_var = true;
        else
          fixed[i] = a.constant;
      }
      if (!any_var) {
        // fully instantiated atom: verify and drop
        if (!target.find(atom.relation)->contains(fixed))
          throw validation_error("unsatisfiable constant constraint after rewrite");
        continue;
      }
      rewritten.push_back(std::move(out));
    }
  }

  Formula nf(target, f.variables(), std::move(rewritten));
  RcspInstance out(std::move(nf), inst.start, inst.target);
  if (checked_pow(f.domain_size(), f.variable_count()) <= limits::solution_cells) {
    if (solution_relation(f) != solution_relation(out.formula))
      throw validation_error("rewrite changed the solution set");
  }
  return out;
}

}  // namespace rcsp

#pragma once

// Conjunctive formulas over a constraint language, with constants allowed in
// argument positions, plus satisfaction, solution enumeration, and
// reconfiguration instances (formula + two endpoint solutions).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcsp/language.hpp"
#include "rcsp/relation.hpp"

namespace rcsp {

// An argument slot: a variable (index into the formula's variable list) or a
// domain constant.
struct Arg {
  int var = -1;
  Value constant = 0;

  static Arg variable(int idx) {
    if (idx < 0) throw validation_error("variable index must be nonnegative");
    Arg a;
    a.var = idx;
    return a;
  }
  static Arg constant_of(Value c) {
    Arg a;
    a.var = -1;
    a.constant = c;
    return a;
  }
  bool is_var() const { return var >= 0; }

  bool operator==(const Arg& o) const {
    return var == o.var && (is_var() || constant == o.constant);
  }
};

struct Constraint {
  std::string relation;  // member name in the language
  std::vector<Arg> args;

  bool operator==(const Constraint& o) const {
    return relation == o.relation && args == o.args;
  }
};

class Formula {
 public:
  Formula(ConstraintLanguage language, std::vector<std::string> variables,
          std::vector<Constraint> constraints)
      : language_(std::move(language)),
        variables_(std::move(variables)),
        constraints_(std::move(constraints)) {
    if (constraints_.empty()) throw validation_error("formula needs at least one constraint");
    if (variables_.empty()) throw validation_error("formula needs at least one variable");
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].empty()) throw validation_error("variable name must not be empty");
      for (std::size_t j = i + 1; j < variables_.size(); ++j)
        if (variables_[i] == variables_[j])
          throw validation_error("duplicate variable name: " + variables_[i]);
    }
    std::vector<char> used(variables_.size(), 0);
    relation_index_.reserve(constraints_.size());
    for (const Constraint& c : constraints_) {
      int ri = language_.index_of(c.relation);
      if (ri < 0) throw validation_error("unknown relation: " + c.relation);
      const Relation& rel = language_.members()[ri].second;
      if (static_cast<int>(c.args.size()) != rel.arity())
        throw validation_error("constraint arity mismatch for " + c.relation);
      for (const Arg& a : c.args) {
        if (a.is_var()) {
          if (a.var >= static_cast<int>(variables_.size()))
            throw validation_error("argument references an undeclared variable");
          used[a.var] = 1;
        } else if (a.constant < 0 || a.constant >= language_.domain_size()) {
          throw validation_error("constant outside domain");
        }
      }
      relation_index_.push_back(ri);
    }
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (!used[i])
        throw validation_error("declared variable never occurs: " + variables_[i]);
  }

  const ConstraintLanguage& language() const { return language_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  int domain_size() const { return language_.domain_size(); }

  int variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (variables_[i] == name) return static_cast<int>(i);
    return -1;
  }

  const Relation& relation_of(std::size_t constraint_idx) const {
    return language_.members()[relation_index_[constraint_idx]].second;
  }

  bool operator==(const Formula& o) const {
    return language_ == o.language_ && variables_ == o.variables_ &&
           constraints_ == o.constraints_;
  }

 private:
  ConstraintLanguage language_;
  std::vector<std::string> variables_;  // coordinate order for assignments
  std::vector<Constraint> constraints_;
  std::vector<int> relation_index_;
};

// Assignments are tuples aligned with the formula's variable order.
using Assignment = Tuple;

inline Assignment make_assignment(const Formula& f, const std::map<std::string, Value>& named) {
  if (named.size() != f.variables().size())
    throw validation_error("partial assignment");
  Assignment a(f.variables().size());
  for (std::size_t i = 0; i < f.variables().size(); ++i) {
    auto it = named.find(f.variables()[i]);
    if (it == named.end()) throw validation_error("partial assignment");
    a[i] = it->second;
  }
  return a;
}

inline bool satisfies(const Formula& f, const Assignment& a) {
  if (a.size() != f.variables().size()) throw validation_error("partial assignment");
  for (Value v : a)
    if (v < 0 || v >= f.domain_size()) throw validation_error("value outside domain");
  for (std::size_t ci = 0; ci < f.constraints().size(); ++ci) {
    const Constraint& c = f.constraints()[ci];
    Tuple t(c.args.size());
    for (std::size_t i = 0; i < c.args.size(); ++i)
      t[i] = c.args[i].is_var() ? a[c.args[i].var] : c.args[i].constant;
    if (!f.relation_of(ci).contains(t)) return false;
  }
  return true;
}

// The full solution set as a relation with coordinates in variable order.
inline Relation solution_relation(const Formula& f,
                                  std::uint64_t cap = limits::solution_cells) {
  int n = f.variable_count();
  int d = f.domain_size();
  if (checked_pow(d, n) > cap)
    throw cap_error("instance too large for enumeration");
  std::vector<Tuple> sols;
  Assignment a(n, 0);
  for (;;) {
    if (satisfies(f, a)) sols.push_back(a);
    int i = n - 1;
    while (i >= 0 && a[i] == d - 1) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  return Relation(d, n, std::move(sols));
}

// A reconfiguration question: is target reachable from start through
// solutions, changing one variable at a time?
struct RcspInstance {
  Formula formula;
  Assignment start;
  Assignment target;

  RcspInstance(Formula formula_, Assignment start_, Assignment target_)
      : formula(std::move(formula_)), start(std::move(start_)), target(std::move(target_)) {
    if (!satisfies(formula, start)) throw validation_error("start is not a solution");
    if (!satisfies(formula, target)) throw validation_error("target is not a solution");
  }

  bool operator==(const RcspInstance& o) const {
    return formula == o.formula && start == o.start && target == o.target;
  }
};

}  // namespace rcsp

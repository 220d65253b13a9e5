#pragma once

// Differential testing: random instances over random min-closed languages,
// solved greedily and by the exhaustive oracle, with the structural claims
// (unique local minimum per component, descent and diameter bounds) checked
// on the side. Fully seeded; identical reports for identical configs.

#include <cstdint>
#include <string>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/generators.hpp"
#include "rcsp/reconfigure.hpp"
#include "rcsp/relation.hpp"
#include "rcsp/text.hpp"

namespace rcsp {

inline int count_local_minima(const Relation& solutions, const TotalOrder& ord,
                              const std::vector<Tuple>& component) {
  int count = 0;
  for (const Tuple& t : component)
    if (is_locally_minimal(solutions, ord, t)) ++count;
  return count;
}

namespace detail {

inline std::vector<int> bfs_distances(const std::vector<Tuple>& comp, int d,
                                      std::size_t source) {
  std::vector<int> dist(comp.size(), -1);
  std::vector<std::size_t> queue{source};
  dist[source] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t i = queue[qi];
    Tuple t = comp[i];
    for (std::size_t c = 0; c < t.size(); ++c) {
      Value old = t[c];
      for (Value v = 0; v < d; ++v) {
        if (v == old) continue;
        t[c] = v;
        auto it = std::lower_bound(comp.begin(), comp.end(), t);
        if (it != comp.end() && *it == t) {
          std::size_t j = static_cast<std::size_t>(it - comp.begin());
          if (dist[j] < 0) {
            dist[j] = dist[i] + 1;
            queue.push_back(j);
          }
        }
      }
      t[c] = old;
    }
  }
  return dist;
}

}  // namespace detail

// Verify diameter(component) <= bound. One eccentricity e from the least
// member settles it when 2e <= bound (the diameter never exceeds twice any
// eccentricity); otherwise fall back to exact all-pairs search.
inline bool component_diameter_at_most(const std::vector<Tuple>& component, int domain_size,
                                       int bound) {
  if (component.size() <= 1) return bound >= 0;
  std::vector<int> dist = detail::bfs_distances(component, domain_size, 0);
  int ecc = 0;
  for (int x : dist) ecc = std::max(ecc, x);
  if (2 * ecc <= bound) return true;
  for (std::size_t s = 0; s < component.size(); ++s) {
    std::vector<int> ds = detail::bfs_distances(component, domain_size, s);
    for (int x : ds)
      if (x > bound) return false;
  }
  return true;
}

struct DiffTestConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  int domain_size = 2;
  int max_vars = 8;
  int max_constraints = 12;
};

struct DiffTestReport {
  int trials_run = 0;
  int agreements = 0;
  int disagreements = 0;
  int yes_count = 0;
  int no_count = 0;
  int invariance_failures = 0;
  int local_min_violations = 0;
  int descent_bound_violations = 0;
  int diameter_bound_violations = 0;
  int path_violations = 0;
  int max_descent_steps = 0;
  std::vector<std::string> failures;  // first few human-readable mismatches

  bool ok() const {
    return disagreements == 0 && invariance_failures == 0 && local_min_violations == 0 &&
           descent_bound_violations == 0 && diameter_bound_violations == 0 &&
           path_violations == 0;
  }
};

inline DiffTestReport run_difftest(const DiffTestConfig& cfg) {
  if (cfg.domain_size < 2 || cfg.domain_size > 4)
    throw validation_error("differential domain must have 2..4 elements");
  if (cfg.max_vars < 2 || cfg.max_vars > 10)
    throw validation_error("differential variable bound must be 2..10");
  if (cfg.trials < 1) throw validation_error("trial count must be positive");

  SplitMix64 rng(cfg.seed);
  DiffTestReport rep;
  TotalOrder natural = TotalOrder::natural(cfg.domain_size);
  int d = cfg.domain_size;
  int attempts_left = cfg.trials * 40;

  auto note = [&](const std::string& msg) {
    if (rep.failures.size() < 8) rep.failures.push_back(msg);
  };

  while (rep.trials_run < cfg.trials && attempts_left-- > 0) {
    // a fresh random min-closed language
    int nm = 1 + static_cast<int>(rng.below(3));
    ConstraintLanguage lang(d);
    for (int i = 0; i < nm; ++i) {
      int arity = 1 + static_cast<int>(rng.below(3));
      double density = 0.2 + 0.6 * rng.unit();
      lang.add("S" + std::to_string(i + 1),
               gen_random_min_closed(d, arity, rng.next(), density));
    }

    // a random formula over it, constants allowed
    int n_decl = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_vars - 1)));
    int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_constraints)));
    struct RawArg {
      bool is_var;
      int id;
    };
    std::vector<std::pair<int, std::vector<RawArg>>> raw;
    for (int c = 0; c < m; ++c) {
      int member = static_cast<int>(rng.below(nm));
      int arity = lang.members()[member].second.arity();
      std::vector<RawArg> args;
      for (int i = 0; i < arity; ++i) {
        bool constant = rng.below(100) < 15 && !(c == 0 && i == 0);
        if (constant)
          args.push_back({false, static_cast<int>(rng.below(d))});
        else
          args.push_back({true, static_cast<int>(rng.below(n_decl))});
      }
      raw.emplace_back(member, std::move(args));
    }

    // compact to the occurring variables, first occurrence order
    std::vector<int> order;
    for (const auto& [member, args] : raw)
      for (const RawArg& a : args)
        if (a.is_var && std::find(order.begin(), order.end(), a.id) == order.end())
          order.push_back(a.id);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < order.size(); ++i) vars.push_back("x" + std::to_string(i + 1));
    std::vector<Constraint> cons;
    for (const auto& [member, args] : raw) {
      Constraint c;
      c.relation = lang.members()[member].first;
      for (const RawArg& a : args) {
        if (a.is_var) {
          int slot = static_cast<int>(std::find(order.begin(), order.end(), a.id) - order.begin());
          c.args.push_back(Arg::variable(slot));
        } else {
          c.args.push_back(Arg::constant_of(a.id));
        }
      }
      cons.push_back(std::move(c));
    }

    Formula f(lang, vars, cons);
    Relation sols = solution_relation(f);
    if (sols.is_empty()) continue;  // redraw; conflicting constants can wipe the set

    int n = f.variable_count();
    std::uint64_t si = rng.below(sols.size());
    std::uint64_t ti = rng.below(sols.size());
    RcspInstance inst(f, sols.tuples()[si], sols.tuples()[ti]);
    ++rep.trials_run;

    // min-closed languages must be invariant under the natural-order Maltsev
    LanguageInvariance inv = language_invariant(lang, make_ordered_maltsev(d, natural));
    if (!inv.invariant) {
      ++rep.invariance_failures;
      note("trial " + std::to_string(rep.trials_run) + ": invariance failed on " + inv.member);
      continue;
    }

    SolveResult greedy = solve_greedy(inst, natural, false);
    SolveResult oracle = solve_bfs_oracle(inst, true);
    if (greedy.answer == oracle.answer) {
      ++rep.agreements;
    } else {
      ++rep.disagreements;
      note("trial " + std::to_string(rep.trials_run) + ": greedy says " +
           (greedy.answer == Answer::yes ? "yes" : "no") + ", oracle says " +
           (oracle.answer == Answer::yes ? "yes" : "no") + " on\n" + print_instance(inst));
    }
    (oracle.answer == Answer::yes ? rep.yes_count : rep.no_count)++;

    int bound = n * (d - 1);
    rep.max_descent_steps = std::max({rep.max_descent_steps, greedy.steps_s, greedy.steps_t});
    if (greedy.steps_s > bound || greedy.steps_t > bound) {
      ++rep.descent_bound_violations;
      note("trial " + std::to_string(rep.trials_run) + ": descent exceeded n(|D|-1)");
    }
    if (oracle.answer == Answer::yes) {
      const std::vector<Assignment>& path = *oracle.path;
      bool good = path.front() == inst.start && path.back() == inst.target;
      for (std::size_t i = 0; i + 1 < path.size() && good; ++i)
        good = hamming_distance(path[i], path[i + 1]) == 1 && satisfies(f, path[i]);
      if (good) good = satisfies(f, path.back());
      if (!good) {
        ++rep.path_violations;
        note("trial " + std::to_string(rep.trials_run) + ": oracle path invalid");
      }
    }

    for (const std::vector<Tuple>& comp : connected_components(sols)) {
      if (count_local_minima(sols, natural, comp) != 1) {
        ++rep.local_min_violations;
        note("trial " + std::to_string(rep.trials_run) + ": local minimum not unique");
        break;
      }
      if (!component_diameter_at_most(comp, d, 2 * n * (d - 1))) {
        ++rep.diameter_bound_violations;
        note("trial " + std::to_string(rep.trials_run) + ": diameter exceeded 2n(|D|-1)");
        break;
      }
    }
  }
  return rep;
}

}  // namespace rcsp

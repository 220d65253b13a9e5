#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "rcsp/rcsp.hpp"

namespace {

using namespace rcsp;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  out << text;
}

// Reports are key=value lines; text mode interleaves '#' context lines,
// kv mode emits the key=value lines alone.
struct Report {
  bool kv = false;

  void line(const std::string& s) { std::cout << s << "\n"; }
  void note(const std::string& s) {
    if (!kv) std::cout << "# " << s << "\n";
  }
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string tuple_str(const Tuple& t) { return join_values(t, ','); }

std::string rows_str(const std::vector<Tuple>& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ';';
    out += tuple_str(rows[i]);
  }
  return out;
}

Tuple parse_value_list(const std::string& s, const std::string& what) {
  Tuple out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw usage_error("bad " + what + " entry '" + item + "' in '" + s + "'");
    }
  }
  if (out.empty()) throw usage_error("empty " + what + " '" + s + "'");
  return out;
}

TotalOrder parse_order_flag(const std::string& s) {
  return TotalOrder(parse_value_list(s, "order"));
}

std::vector<Tuple> parse_rows_flag(const std::string& s) {
  std::vector<Tuple> rows;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) rows.push_back(parse_value_list(part, "row"));
  if (rows.empty()) throw usage_error("empty rows '" + s + "'");
  return rows;
}

// ----- classify -----

void witness_line(Report& rep, const std::string& name, const std::string& property,
                  const PropertyWitness& w, const std::string& target,
                  const std::string& op) {
  std::string s = "witness relation=" + name + " property=" + property;
  if (w.pattern) s += " pattern=" + w.pattern->to_string();
  if (!target.empty()) s += " target=" + target;
  if (!op.empty()) s += " op=" + op;
  if (!w.rows.empty()) s += " rows=" + rows_str(w.rows);
  if (w.escape) s += " escape=" + tuple_str(*w.escape);
  rep.line(s);
}

int run_classify(Report& rep, const std::string& file, bool witness, int max_arity) {
  ConstraintLanguage lang = parse_language(slurp(file));
  if (lang.domain_size() != 2) {
    rep.note("non-Boolean domain: reporting order search and min closure only");
    OrderSearchResult search = find_ordered_maltsev_order(lang);
    if (search.order)
      rep.line("order=" + search.order->to_string() +
               " rejected=" + std::to_string(search.rejected_count()));
    else
      rep.line("order=none rejected=" + std::to_string(search.rejected_count()));
    LanguageInvariance mc =
        is_min_closed(lang, TotalOrder::natural(lang.domain_size()));
    rep.line("min_closed_natural=" + bool_str(mc.invariant));
    return 0;
  }

  // same computation as dichotomy_verdict, with the arity guard surfaced
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
    rv.safely_cw_bijunctive = is_safely_cw_bijunctive(rel, max_arity);
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
  rep.note("per-relation classification");
  for (const auto& [name, rv] : v.per_relation) {
    rep.line("relation=" + name + " or_free=" + bool_str(rv.or_free.holds) +
             " nand_free=" + bool_str(rv.nand_free.holds) +
             " safely_or_free=" + bool_str(rv.safely_or_free.holds) +
             " safely_nand_free=" + bool_str(rv.safely_nand_free.holds) +
             " cw_bijunctive=" + bool_str(rv.cw_bijunctive.holds) +
             " safely_cw_bijunctive=" + bool_str(rv.safely_cw_bijunctive.holds));
    if (witness) {
      if (!rv.or_free.holds)
        witness_line(rep, name, "or_free", *rv.or_free.witness, "OR", "");
      if (!rv.nand_free.holds)
        witness_line(rep, name, "nand_free", *rv.nand_free.witness, "NAND", "");
      if (!rv.safely_or_free.holds)
        witness_line(rep, name, "safely_or_free", *rv.safely_or_free.witness, "OR", "");
      if (!rv.safely_nand_free.holds)
        witness_line(rep, name, "safely_nand_free", *rv.safely_nand_free.witness, "NAND",
                     "");
      if (!rv.cw_bijunctive.holds)
        witness_line(rep, name, "cw_bijunctive", *rv.cw_bijunctive.witness, "",
                     "majority");
      if (!rv.safely_cw_bijunctive.holds)
        witness_line(rep, name, "safely_cw_bijunctive", *rv.safely_cw_bijunctive.witness,
                     "", "majority");
    }
  }
  rep.note("language verdict");
  rep.line("tight=" + bool_str(v.tight) + " safely_tight=" + bool_str(v.safely_tight) +
           " dichotomy=" +
           std::string(v.dichotomy == Complexity::P ? "P" : "PSPACE-complete"));
  return 0;
}

// ----- solve and oracle -----

void print_solution_report(Report& rep, const SolveResult& res) {
  std::string head = "answer=" + std::string(res.answer == Answer::yes ? "yes" : "no") +
                     " method=" + (res.method == Method::greedy ? "greedy" : "bfs");
  if (res.method == Method::greedy) head += " heuristic=" + bool_str(res.heuristic);
  rep.line(head);
  if (res.method == Method::greedy) {
    rep.line("order=" + res.order->to_string());
    rep.line("s_min=" + tuple_str(*res.s_min) + " t_min=" + tuple_str(*res.t_min) +
             " steps_s=" + std::to_string(res.steps_s) +
             " steps_t=" + std::to_string(res.steps_t));
  } else {
    rep.line("visited=" + std::to_string(res.visited));
  }
  if (res.path) {
    std::string p = "path=";
    for (std::size_t i = 0; i < res.path->size(); ++i) {
      if (i) p += ';';
      p += tuple_str((*res.path)[i]);
    }
    rep.line(p);
  }
}

int run_solve(Report& rep, const std::string& file, const std::string& method,
              const std::string& order_flag, bool want_path, std::uint64_t max_enum) {
  RcspInstance inst = parse_instance(slurp(file)).to_instance();
  SolveResult res;
  if (method == "bfs") {
    res = solve_bfs_oracle(inst, want_path, max_enum);
  } else if (method == "greedy") {
    if (want_path) throw usage_error("--path requires the bfs oracle");
    std::optional<TotalOrder> order;
    bool heuristic = false;
    if (!order_flag.empty()) {
      order = parse_order_flag(order_flag);
      if (order->size() != inst.formula.domain_size())
        throw validation_error("order size must match domain");
      PartialOperation m = make_ordered_maltsev(inst.formula.domain_size(), *order);
      heuristic = !language_invariant(inst.formula.language(), m).invariant;
      if (heuristic)
        rep.note("language is not invariant under the requested order; "
                 "greedy descent is heuristic");
    } else {
      OrderSearchResult search = find_ordered_maltsev_order(inst.formula.language());
      if (!search.order)
        throw validation_error(
            "no invariant order exists; pass --order to force heuristic descent "
            "or use --method bfs");
      order = search.order;
    }
    res = solve_greedy(inst, *order, heuristic);
  } else {  // auto
    if (want_path) {
      res = solve_bfs_oracle(inst, true, max_enum);
    } else {
      res = solve_auto(inst);
    }
  }
  print_solution_report(rep, res);
  return 0;
}

// ----- check-op -----

PartialOperation build_op(const std::string& spec, const std::string& order_flag, int d) {
  TotalOrder ord = order_flag.empty() ? TotalOrder::natural(d)
                                      : parse_order_flag(order_flag);
  if (ord.size() != d) throw validation_error("order size must match domain");
  if (spec == "partial-maltsev") return make_partial_maltsev(d);
  if (spec == "ordered-maltsev") return make_ordered_maltsev(d, ord);
  if (spec == "majority") {
    if (d != 2) throw validation_error("majority is Boolean only");
    return make_boolean_majority();
  }
  if (spec == "min") return make_min(d, ord);
  auto [name, op] = parse_operation(slurp(spec));
  (void)name;
  if (op.domain_size() != d)
    throw validation_error("operation and relation domains differ");
  return op;
}

int run_check_op(Report& rep, const std::string& file, const std::string& op_spec,
                 const std::string& order_flag, const std::string& pattern_flag,
                 const std::string& rows_flag, const std::string& target,
                 std::uint64_t max_enum) {
  auto [rname, r] = parse_relation(slurp(file));
  (void)rname;
  if (!pattern_flag.empty()) {
    Pattern p = Pattern::parse(pattern_flag);
    r = apply_pattern(r, p, true);
    rep.line("pattern=" + pattern_flag + " image_size=" + std::to_string(r.size()));
  }
  if (!target.empty()) {
    Relation want = gen_named_boolean(target);
    rep.line("target=" + target + " matches_target=" + bool_str(r == want));
  }
  if (op_spec.empty()) {
    if (target.empty() && pattern_flag.empty())
      throw usage_error("check-op needs --op, --pattern or --target");
    return 0;
  }
  PartialOperation op = build_op(op_spec, order_flag, r.domain_size());
  if (!rows_flag.empty()) {
    std::vector<Tuple> rows = parse_rows_flag(rows_flag);
    auto img = apply_componentwise(op, rows);
    if (!img) {
      rep.line("rows=" + rows_flag + " image=undefined");
      return 0;
    }
    bool inside = r.contains(*img);
    std::string out = "rows=" + rows_flag + " image=" + tuple_str(*img) +
                      " inside=" + bool_str(inside);
    if (inside && r.contains(rows.front())) {
      // same Hamming component as the first row, for component witnesses
      bool same = false;
      for (const auto& comp : connected_components(r)) {
        bool has_row = std::binary_search(comp.begin(), comp.end(), rows.front());
        if (has_row) same = std::binary_search(comp.begin(), comp.end(), *img);
        if (has_row) break;
      }
      out += " same_component=" + bool_str(same);
    }
    rep.line(out);
    return 0;
  }
  InvarianceResult res = is_invariant(r, op, max_enum);
  if (res.invariant) {
    rep.line("invariant=true");
  } else {
    rep.line("invariant=false rows=" + rows_str(res.counterexample->rows) +
             " escape=" + tuple_str(res.counterexample->escape));
  }
  return 0;
}

// ----- find-order -----

int run_find_order(Report& rep, const std::string& file, bool list_rejections,
                   std::uint64_t max_orders) {
  ConstraintLanguage lang = parse_language(slurp(file));
  OrderSearchResult res = find_ordered_maltsev_order(lang, max_orders);
  if (res.order)
    rep.line("order=" + res.order->to_string() +
             " rejected=" + std::to_string(res.rejected_count()));
  else
    rep.line("order=none rejected=" + std::to_string(res.rejected_count()));
  if (list_rejections)
    for (const OrderRejection& rej : res.rejections)
      rep.line("rejection order=" + rej.order.to_string() + " member=" + rej.member +
               " rows=" + rows_str(rej.counterexample.rows) +
               " escape=" + tuple_str(rej.counterexample.escape));
  return 0;
}

// ----- express and rewrite -----

int run_express(Report& rep, const std::string& file, const std::string& lang_file,
                const std::string& out_file, int max_arity) {
  auto [name, r] = parse_relation(slurp(file));
  ConstraintLanguage lang = parse_language(slurp(lang_file));
  ExpressResult res = express_check(r, lang, max_arity);
  if (res.expressible) {
    std::string head = "expressible=true";
    if (res.empty_relation) head += " empty_relation=true";
    if (res.formula)
      head += " atoms=" + std::to_string(res.formula->constraints().size());
    rep.line(head);
    if (res.formula) {
      std::string text = print_instance(*res.formula);
      if (!out_file.empty()) {
        spill(out_file, text);
        rep.line("written=" + out_file);
      } else if (!rep.kv) {
        rep.note("defining formula for " + name);
        std::cout << text;
      }
    }
  } else {
    std::string slack;
    for (std::size_t i = 0; i < res.slack.size(); ++i) {
      if (i) slack += ';';
      slack += tuple_str(res.slack[i]);
    }
    rep.line("expressible=false slack=" + slack);
  }
  return 0;
}

int run_rewrite(const std::string& file, const std::string& lang_file,
                const std::string& out_file) {
  RcspInstance inst = parse_instance(slurp(file)).to_instance();
  ConstraintLanguage target = parse_language(slurp(lang_file));
  RcspInstance out = rewrite_instance(inst, target);
  std::string text = print_instance(out.formula, &out.start, &out.target);
  if (!out_file.empty())
    spill(out_file, text);
  else
    std::cout << text;
  return 0;
}

// ----- digraph -----

int run_digraph_rect(Report& rep, const std::string& file) {
  Digraph g = parse_digraph(slurp(file));
  RectangularityResult res = is_rectangular(g);
  if (res.rectangular) {
    rep.line("rectangular=true");
  } else {
    rep.note("witness u,w,v,x: arcs (u,w),(v,w),(v,x) present but (u,x) missing");
    const RectangularityWitness& w = *res.witness;
    rep.line("rectangular=false witness=" + std::to_string(w.u) + "," +
             std::to_string(w.w) + "," + std::to_string(w.v) + "," + std::to_string(w.x));
  }
  return 0;
}

int run_digraph_krect(Report& rep, const std::string& file, int k) {
  Digraph g = parse_digraph(slurp(file));
  KRectangularityResult res = is_k_rectangular(g, k);
  std::string out = "k=" + std::to_string(k) +
                    " k_rectangular=" + bool_str(res.holds);
  if (!res.holds)
    out += " witness=" + std::to_string(res.witness->first) + "," +
           std::to_string(res.witness->second);
  rep.line(out);
  return 0;
}

int run_digraph_total(Report& rep, const std::string& file, std::uint64_t guard) {
  Digraph g = parse_digraph(slurp(file));
  TotalRectangularityResult res = is_totally_rectangular(g, guard);
  if (res.holds) {
    rep.line("totally_rectangular=true preperiod=" +
             std::to_string(res.certificate.preperiod) +
             " period=" + std::to_string(res.certificate.period) +
             " max_k=" + std::to_string(res.certificate.max_k));
  } else {
    rep.line("totally_rectangular=false failing_k=" + std::to_string(*res.failing_k) +
             " witness=" + std::to_string(res.witness->first) + "," +
             std::to_string(res.witness->second));
  }
  return 0;
}

// ----- gen -----

void emit_gen(const std::string& name, const std::variant<Relation, Digraph>& made,
              bool as_digraph, const std::string& out_file, const std::string& meta) {
  const Relation& r =
      std::holds_alternative<Relation>(made) ? std::get<Relation>(made)
                                             : std::get<Digraph>(made).arcs;
  if (as_digraph && r.arity() != 2)
    throw validation_error("--as-digraph needs a binary relation");
  std::string text = meta.empty() ? "" : "# " + meta + "\n";
  text += print_relation(name, r);
  if (!out_file.empty())
    spill(out_file, text);
  else
    std::cout << text;
}

// ----- difftest -----

int run_difftest_cmd(Report& rep, const DiffTestConfig& cfg) {
  DiffTestReport res = run_difftest(cfg);
  rep.line("seed=" + std::to_string(cfg.seed) + " trials=" +
           std::to_string(res.trials_run) + " domain=" + std::to_string(cfg.domain_size));
  rep.line("agreements=" + std::to_string(res.agreements) +
           " disagreements=" + std::to_string(res.disagreements) +
           " yes=" + std::to_string(res.yes_count) +
           " no=" + std::to_string(res.no_count));
  rep.line("invariance_failures=" + std::to_string(res.invariance_failures) +
           " local_min_violations=" + std::to_string(res.local_min_violations) +
           " descent_bound_violations=" + std::to_string(res.descent_bound_violations) +
           " diameter_bound_violations=" +
           std::to_string(res.diameter_bound_violations) +
           " path_violations=" + std::to_string(res.path_violations));
  rep.line("max_descent_steps=" + std::to_string(res.max_descent_steps));
  rep.line("ok=" + bool_str(res.ok()));
  for (const std::string& f : res.failures) {
    std::istringstream lines(f);
    std::string l;
    while (std::getline(lines, l)) rep.note("failure: " + l);
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"finite-domain constraint language analysis and "
               "solution reconfiguration toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"kv", "text"}));

  Report rep;

  // classify
  auto* classify = app.add_subcommand("classify", "classify a constraint language");
  std::string classify_file;
  bool classify_witness = false;
  int classify_max_arity = limits::scb_max_arity;
  classify->add_option("file", classify_file, "language file")->required();
  classify->add_flag("--witness", classify_witness, "print replayable witnesses");
  classify->add_option("--max-arity", classify_max_arity, "identification arity guard");

  // solve / oracle
  auto* solve = app.add_subcommand("solve", "decide solution connectivity");
  std::string solve_file, solve_method = "auto", solve_order;
  bool solve_path = false;
  std::uint64_t solve_max_enum = limits::solution_cells;
  solve->add_option("file", solve_file, "instance file with start/target")->required();
  solve->add_option("--method", solve_method, "auto, greedy or bfs")
      ->check(CLI::IsMember({"auto", "greedy", "bfs"}));
  solve->add_option("--order", solve_order, "domain order for greedy descent");
  solve->add_flag("--path", solve_path, "emit a reconfiguration path (bfs)");
  solve->add_option("--max-enum", solve_max_enum, "assignment enumeration cap");

  auto* oracle = app.add_subcommand("oracle", "breadth-first solution-graph search");
  std::string oracle_file;
  bool oracle_path = false;
  std::uint64_t oracle_max_enum = limits::solution_cells;
  oracle->add_option("file", oracle_file, "instance file with start/target")->required();
  oracle->add_flag("--path", oracle_path, "emit a reconfiguration path");
  oracle->add_option("--max-enum", oracle_max_enum, "assignment enumeration cap");

  // check-op
  auto* check = app.add_subcommand("check-op", "check invariance or replay witnesses");
  std::string check_file, check_op, check_order, check_pattern, check_rows, check_target;
  std::uint64_t check_max_enum = limits::invariance_budget;
  check->add_option("file", check_file, "relation file")->required();
  check->add_option("--op", check_op,
                    "partial-maltsev, ordered-maltsev, majority, min, or a file");
  check->add_option("--order", check_order, "domain order for ordered families");
  check->add_option("--pattern", check_pattern, "substitution applied first");
  check->add_option("--rows", check_rows, "rows to apply the operation to");
  check->add_option("--target", check_target, "compare against a named relation");
  check->add_option("--max-enum", check_max_enum, "invariance scan budget");

  // find-order
  auto* forder = app.add_subcommand("find-order", "search for an invariant order");
  std::string forder_file;
  bool forder_rejections = false;
  std::uint64_t forder_max = limits::max_orders;
  forder->add_option("file", forder_file, "language file")->required();
  forder->add_flag("--rejections", forder_rejections, "list every rejected order");
  forder->add_option("--max-orders", forder_max, "order enumeration cap");

  // express / rewrite
  auto* express = app.add_subcommand("express", "conjunctive definability check");
  std::string express_file, express_lang, express_out;
  int express_max_arity = limits::express_max_arity;
  express->add_option("file", express_file, "relation file")->required();
  express->add_option("--lang", express_lang, "target language file")->required();
  express->add_option("-o,--out", express_out, "write the defining formula here");
  express->add_option("--max-arity", express_max_arity, "relation arity guard");

  auto* rewrite = app.add_subcommand("rewrite", "rewrite an instance over a language");
  std::string rewrite_file, rewrite_lang, rewrite_out;
  rewrite->add_option("file", rewrite_file, "instance file")->required();
  rewrite->add_option("--lang", rewrite_lang, "target language file")->required();
  rewrite->add_option("-o,--out", rewrite_out, "write the rewritten instance here");

  // digraph
  auto* digraph = app.add_subcommand("digraph", "rectangularity checks");
  digraph->require_subcommand(1);
  digraph->fallthrough();
  auto* drect = digraph->add_subcommand("rect", "one-step rectangularity");
  drect->fallthrough();
  std::string drect_file;
  drect->add_option("file", drect_file, "digraph file")->required();
  auto* dkrect = digraph->add_subcommand("k-rect", "k-step rectangularity");
  dkrect->fallthrough();
  std::string dkrect_file;
  int dkrect_k = 1;
  dkrect->add_option("file", dkrect_file, "digraph file")->required();
  dkrect->add_option("--k", dkrect_k, "number of steps")->required();
  auto* dtotal = digraph->add_subcommand("total-rect", "rectangularity for every k");
  dtotal->fallthrough();
  std::string dtotal_file;
  std::uint64_t dtotal_guard = 0;
  dtotal->add_option("file", dtotal_file, "digraph file")->required();
  dtotal->add_option("--guard", dtotal_guard, "iteration cap, 0 for the default");

  // gen
  auto* gencmd = app.add_subcommand("gen", "emit relation and digraph families");
  gencmd->require_subcommand(1);
  gencmd->fallthrough();
  std::string gen_out;
  bool gen_as_digraph = false;
  gencmd->add_option("-o,--out", gen_out, "write to a file instead of stdout");
  gencmd->add_flag("--as-digraph", gen_as_digraph, "insist on a binary relation");

  auto* g_m = gencmd->add_subcommand("m-family", "minimally non-bijunctive path member");
  g_m->fallthrough();
  int gm_r = 3;
  g_m->add_option("--r", gm_r, "arity")->required();
  auto* g_cc = gencmd->add_subcommand("circular-clique", "circular clique C_{p,q}");
  g_cc->fallthrough();
  int gcc_p = 6, gcc_q = 3;
  g_cc->add_option("--p", gcc_p, "vertices")->required();
  g_cc->add_option("--q", gcc_q, "distance bound")->required();
  auto* g_tt = gencmd->add_subcommand("tournament", "transitive tournament");
  g_tt->fallthrough();
  int gtt_n = 3;
  bool gtt_reflexive = false;
  g_tt->add_option("--n", gtt_n, "vertices")->required();
  g_tt->add_flag("--reflexive", gtt_reflexive, "add loops");
  auto* g_c4 = gencmd->add_subcommand("c4-orientation", "oriented four-cycle");
  g_c4->fallthrough();
  int gc4_which = 1;
  g_c4->add_option("--which", gc4_which, "1 or 2")->required();
  auto* g_cy = gencmd->add_subcommand("cycle", "undirected cycle");
  g_cy->fallthrough();
  int gcy_n = 4;
  g_cy->add_option("--n", gcy_n, "vertices")->required();
  auto* g_nb = gencmd->add_subcommand("named", "named Boolean relation");
  g_nb->fallthrough();
  std::string gnb_name;
  g_nb->add_option("name", gnb_name, "OR, NAND, IMPL, NAE, R00..R11, EQ, NEQ, C0, C1")
      ->required();
  auto* g_2s = gencmd->add_subcommand("2sat", "the two-clause language with equality");
  g_2s->fallthrough();
  auto* g_rm = gencmd->add_subcommand("random-min-closed", "random min-closed relation");
  g_rm->fallthrough();
  int grm_domain = 2, grm_arity = 2;
  std::uint64_t grm_seed = 0;
  double grm_density = 0.5;
  g_rm->add_option("--domain", grm_domain, "domain size")->required();
  g_rm->add_option("--arity", grm_arity, "arity")->required();
  g_rm->add_option("--seed", grm_seed, "generator seed")->required();
  g_rm->add_option("--density", grm_density, "tuple keep probability");

  // difftest
  auto* dt = app.add_subcommand("difftest", "greedy versus oracle agreement suite");
  DiffTestConfig dt_cfg;
  if (const char* env = std::getenv("RCSPKIT_SEED"))
    dt_cfg.seed = std::strtoull(env, nullptr, 10);
  dt->add_option("--seed", dt_cfg.seed, "random seed (default RCSPKIT_SEED or 42)");
  dt->add_option("--trials", dt_cfg.trials, "number of random instances");
  dt->add_option("--domain", dt_cfg.domain_size, "domain size");
  dt->add_option("--vars", dt_cfg.max_vars, "variable cap per instance");
  dt->add_option("--cons", dt_cfg.max_constraints, "constraint cap per instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }
  rep.kv = (format == "kv");

  if (*classify)
    return run_classify(rep, classify_file, classify_witness, classify_max_arity);
  if (*solve)
    return run_solve(rep, solve_file, solve_method, solve_order, solve_path,
                     solve_max_enum);
  if (*oracle) return run_solve(rep, oracle_file, "bfs", "", oracle_path, oracle_max_enum);
  if (*check)
    return run_check_op(rep, check_file, check_op, check_order, check_pattern,
                        check_rows, check_target, check_max_enum);
  if (*forder) return run_find_order(rep, forder_file, forder_rejections, forder_max);
  if (*express)
    return run_express(rep, express_file, express_lang, express_out, express_max_arity);
  if (*rewrite) return run_rewrite(rewrite_file, rewrite_lang, rewrite_out);
  if (*digraph) {
    if (*drect) return run_digraph_rect(rep, drect_file);
    if (*dkrect) return run_digraph_krect(rep, dkrect_file, dkrect_k);
    return run_digraph_total(rep, dtotal_file, dtotal_guard);
  }
  if (*gencmd) {
    if (*g_m) emit_gen("M" + std::to_string(gm_r), gen_m_family(gm_r), gen_as_digraph,
                       gen_out, "");
    if (*g_cc)
      emit_gen("C" + std::to_string(gcc_p) + "_" + std::to_string(gcc_q),
               gen_circular_clique(gcc_p, gcc_q), gen_as_digraph, gen_out, "");
    if (*g_tt)
      emit_gen(std::string(gtt_reflexive ? "RT" : "T") + std::to_string(gtt_n),
               gen_transitive_tournament(gtt_n, gtt_reflexive), gen_as_digraph, gen_out,
               "");
    if (*g_c4)
      emit_gen("O" + std::to_string(gc4_which), gen_c4_orientation(gc4_which),
               gen_as_digraph, gen_out, "");
    if (*g_cy)
      emit_gen("CY" + std::to_string(gcy_n), gen_cycle(gcy_n), gen_as_digraph, gen_out,
               "");
    if (*g_nb) emit_gen(gnb_name, gen_named_boolean(gnb_name), gen_as_digraph, gen_out, "");
    if (*g_2s) {
      ConstraintLanguage lang(2);
      for (const char* n : {"R00", "R01", "R10", "R11", "EQ"})
        lang.add(n, gen_named_boolean(n));
      std::string text = print_language(lang);
      if (!gen_out.empty())
        spill(gen_out, text);
      else
        std::cout << text;
    }
    if (*g_rm) {
      std::ostringstream meta;
      meta << "generator splitmix64 seed=" << grm_seed << " density=" << grm_density;
      emit_gen("S", gen_random_min_closed(grm_domain, grm_arity, grm_seed, grm_density),
               gen_as_digraph, gen_out, meta.str());
    }
    return 0;
  }
  return run_difftest_cmd(rep, dt_cfg);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const cap_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  }
}

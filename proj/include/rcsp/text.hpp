#pragma once

// Text formats and their parsers/printers.
//
//   relation/language file:   rel NAME ARITY over D    then one tuple per line
//   operation file:           pop NAME ARITY over D    then lines "k1 .. kk -> v"
//   instance file:            domain / rel NAME ARITY { t ; t } / var / cst / start / target
//
// `#` not followed by a digit starts a comment to end of line; `#c` is a
// domain constant. Printers emit the canonical form: tuples sorted, one
// space between values, so print-then-parse is the identity.

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rcsp/formula.hpp"
#include "rcsp/language.hpp"
#include "rcsp/partial_op.hpp"
#include "rcsp/relation.hpp"

namespace rcsp {

namespace detail {

struct Tok {
  std::string s;
  int line = 0;
  int col = 0;
};

// whitespace-separated tokens; "{", "}", ";" always stand alone
inline std::vector<Tok> tokenize(const std::string& text) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto step = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      step(c);
      ++i;
      continue;
    }
    if (c == '#' && !(i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      while (i < text.size() && text[i] != '\n') {
        step(text[i]);
        ++i;
      }
      continue;
    }
    int tl = line, tc = col;
    if (c == '{' || c == '}' || c == ';') {
      out.push_back({std::string(1, c), tl, tc});
      step(c);
      ++i;
      continue;
    }
    std::string word;
    if (c == '#') {  // constant: '#' plus digits
      word += c;
      step(c);
      ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        word += text[i];
        step(text[i]);
        ++i;
      }
    } else {
      while (i < text.size()) {
        char w = text[i];
        if (std::isspace(static_cast<unsigned char>(w)) || w == '{' || w == '}' ||
            w == ';' || w == '#')
          break;
        word += w;
        step(w);
        ++i;
      }
    }
    out.push_back({std::move(word), tl, tc});
  }
  return out;
}

class TokStream {
 public:
  explicit TokStream(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  bool done() const { return i_ >= toks_.size(); }
  const Tok& peek() const {
    if (done()) throw parse_error("unexpected end of input", last_line(), 1);
    return toks_[i_];
  }
  Tok next() {
    Tok t = peek();
    ++i_;
    return t;
  }
  Tok expect(const std::string& what) {
    if (done()) throw parse_error("expected " + what, last_line(), 1);
    return next();
  }
  void expect_word(const std::string& w) {
    Tok t = expect("'" + w + "'");
    if (t.s != w) throw parse_error("expected '" + w + "', got '" + t.s + "'", t.line, t.col);
  }
  int last_line() const { return toks_.empty() ? 1 : toks_.back().line; }

 private:
  std::vector<Tok> toks_;
  std::size_t i_ = 0;
};

inline int parse_int(const Tok& t, const std::string& what) {
  if (t.s.empty()) throw parse_error("expected " + what, t.line, t.col);
  for (char c : t.s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw parse_error("expected " + what + ", got '" + t.s + "'", t.line, t.col);
  try {
    return std::stoi(t.s);
  } catch (const std::exception&) {
    throw parse_error(what + " out of range: '" + t.s + "'", t.line, t.col);
  }
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace detail

// ----- relation and language files -----

inline std::vector<std::pair<std::string, Relation>> parse_relation_blocks(
    const std::string& text) {
  detail::TokStream ts(detail::tokenize(text));
  std::vector<std::pair<std::string, Relation>> blocks;
  int dsize = 0;
  while (!ts.done()) {
    detail::Tok kw = ts.next();
    if (kw.s != "rel")
      throw parse_error("expected 'rel', got '" + kw.s + "'", kw.line, kw.col);
    detail::Tok name = ts.expect("relation name");
    if (!detail::is_identifier(name.s))
      throw parse_error("bad relation name '" + name.s + "'", name.line, name.col);
    int arity = detail::parse_int(ts.expect("arity"), "arity");
    ts.expect_word("over");
    int d = detail::parse_int(ts.expect("domain size"), "domain size");
    if (blocks.empty()) {
      if (d < 2) throw parse_error("domain must have at least two elements", kw.line, kw.col);
      dsize = d;
    } else if (d != dsize) {
      throw parse_error("domain size differs between relations", kw.line, kw.col);
    }
    if (arity < 1) throw parse_error("arity must be positive", name.line, name.col);
    std::vector<Tuple> tuples;
    Tuple cur;
    while (!ts.done() && ts.peek().s != "rel") {
      detail::Tok v = ts.next();
      cur.push_back(detail::parse_int(v, "tuple value"));
      if (static_cast<int>(cur.size()) == arity) {
        tuples.push_back(cur);
        cur.clear();
      }
    }
    if (!cur.empty())
      throw parse_error("dangling values: tuple count not divisible by arity", kw.line, kw.col);
    try {
      blocks.emplace_back(name.s, Relation(dsize, arity, std::move(tuples)));
    } catch (const validation_error& e) {
      throw parse_error(e.what(), name.line, name.col);
    }
  }
  if (blocks.empty()) throw parse_error("no relations in input", 1, 1);
  return blocks;
}

inline ConstraintLanguage parse_language(const std::string& text) {
  auto blocks = parse_relation_blocks(text);
  ConstraintLanguage lang(blocks.front().second.domain_size());
  for (auto& [name, rel] : blocks) {
    try {
      lang.add(name, std::move(rel));
    } catch (const validation_error& e) {
      throw parse_error(e.what(), 1, 1);
    }
  }
  return lang;
}

inline std::pair<std::string, Relation> parse_relation(const std::string& text) {
  auto blocks = parse_relation_blocks(text);
  if (blocks.size() != 1) throw parse_error("expected a single relation", 1, 1);
  return std::move(blocks.front());
}

inline Digraph parse_digraph(const std::string& text) {
  auto [name, rel] = parse_relation(text);
  (void)name;
  if (rel.arity() != 2) throw parse_error("digraph needs a binary arc relation", 1, 1);
  return Digraph(std::move(rel));
}

inline std::string print_relation(const std::string& name, const Relation& r) {
  std::ostringstream os;
  os << "rel " << name << " " << r.arity() << " over " << r.domain_size() << "\n";
  for (const Tuple& t : r.tuples()) os << join_values(t, ' ') << "\n";
  return os.str();
}

inline std::string print_language(const ConstraintLanguage& lang) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, rel] : lang.members()) {
    if (!first) os << "\n";
    os << print_relation(name, rel);
    first = false;
  }
  return os.str();
}

// ----- operation files -----

inline std::pair<std::string, PartialOperation> parse_operation(const std::string& text) {
  detail::TokStream ts(detail::tokenize(text));
  detail::Tok kw = ts.expect("'pop'");
  if (kw.s != "pop") throw parse_error("expected 'pop', got '" + kw.s + "'", kw.line, kw.col);
  detail::Tok name = ts.expect("operation name");
  if (!detail::is_identifier(name.s))
    throw parse_error("bad operation name '" + name.s + "'", name.line, name.col);
  int arity = detail::parse_int(ts.expect("arity"), "arity");
  ts.expect_word("over");
  int dsize = detail::parse_int(ts.expect("domain size"), "domain size");
  if (arity < 1) throw parse_error("arity must be positive", name.line, name.col);
  if (dsize < 2) throw parse_error("domain must have at least two elements", name.line, name.col);
  PartialOperation op(dsize, arity);
  while (!ts.done()) {
    Tuple key;
    detail::Tok first = ts.peek();
    for (int i = 0; i < arity; ++i)
      key.push_back(detail::parse_int(ts.expect("key value"), "key value"));
    ts.expect_word("->");
    int out = detail::parse_int(ts.expect("result value"), "result value");
    try {
      op.define(key, out);
    } catch (const validation_error& e) {
      throw parse_error(e.what(), first.line, first.col);
    }
  }
  return {name.s, std::move(op)};
}

inline std::string print_operation(const std::string& name, const PartialOperation& op) {
  std::ostringstream os;
  os << "pop " << name << " " << op.arity() << " over " << op.domain_size() << "\n";
  op.for_each_defined([&](const Tuple& key, Value v) {
    os << join_values(key, ' ') << " -> " << v << "\n";
  });
  return os.str();
}

// ----- instance files -----

struct ParsedInstance {
  Formula formula;
  std::optional<Assignment> start;
  std::optional<Assignment> target;

  bool has_endpoints() const { return start && target; }
  RcspInstance to_instance() const {
    if (!has_endpoints()) throw validation_error("instance has no start/target");
    return RcspInstance(formula, *start, *target);
  }
};

inline ParsedInstance parse_instance(const std::string& text) {
  detail::TokStream ts(detail::tokenize(text));

  ts.expect_word("domain");
  detail::Tok dt = ts.expect("domain size");
  int dsize = detail::parse_int(dt, "domain size");
  if (dsize < 2) throw parse_error("domain must have at least two elements", dt.line, dt.col);
  ConstraintLanguage lang(dsize);

  std::optional<std::vector<detail::Tok>> var_line;
  struct RawCst {
    detail::Tok name;
    std::vector<detail::Tok> args;
  };
  std::vector<RawCst> csts;
  std::optional<std::pair<detail::Tok, Tuple>> start, target;

  auto read_values = [&](const std::string& what, int same_line) {
    Tuple vals;
    while (!ts.done() && ts.peek().line == same_line)
      vals.push_back(detail::parse_int(ts.next(), what));
    return vals;
  };

  while (!ts.done()) {
    detail::Tok kw = ts.next();
    if (kw.s == "rel") {
      detail::Tok name = ts.expect("relation name");
      if (!detail::is_identifier(name.s))
        throw parse_error("bad relation name '" + name.s + "'", name.line, name.col);
      int arity = detail::parse_int(ts.expect("arity"), "arity");
      if (arity < 1) throw parse_error("arity must be positive", name.line, name.col);
      ts.expect_word("{");
      std::vector<Tuple> tuples;
      Tuple cur;
      for (;;) {
        detail::Tok t = ts.expect("tuple value, ';' or '}'");
        if (t.s == "}") {
          if (!cur.empty()) {
            if (static_cast<int>(cur.size()) != arity)
              throw parse_error("tuple arity mismatch", t.line, t.col);
            tuples.push_back(cur);
          }
          break;
        }
        if (t.s == ";") {
          if (static_cast<int>(cur.size()) != arity)
            throw parse_error("tuple arity mismatch", t.line, t.col);
          tuples.push_back(cur);
          cur.clear();
          continue;
        }
        cur.push_back(detail::parse_int(t, "tuple value"));
      }
      try {
        lang.add(name.s, Relation(dsize, arity, std::move(tuples)));
      } catch (const validation_error& e) {
        throw parse_error(e.what(), name.line, name.col);
      }
    } else if (kw.s == "var") {
      if (var_line) throw parse_error("duplicate var line", kw.line, kw.col);
      std::vector<detail::Tok> names;
      while (!ts.done() && ts.peek().line == kw.line) {
        detail::Tok t = ts.next();
        if (!detail::is_identifier(t.s))
          throw parse_error("bad variable name '" + t.s + "'", t.line, t.col);
        names.push_back(t);
      }
      if (names.empty()) throw parse_error("empty var line", kw.line, kw.col);
      var_line = std::move(names);
    } else if (kw.s == "cst") {
      detail::Tok name = ts.expect("relation name");
      RawCst rc{name, {}};
      while (!ts.done() && ts.peek().line == kw.line) rc.args.push_back(ts.next());
      csts.push_back(std::move(rc));
    } else if (kw.s == "start" || kw.s == "target") {
      auto& slot = (kw.s == "start") ? start : target;
      if (slot) throw parse_error("duplicate " + kw.s + " line", kw.line, kw.col);
      slot = {kw, read_values(kw.s + " value", kw.line)};
    } else if (kw.s == "domain") {
      throw parse_error("duplicate domain line", kw.line, kw.col);
    } else {
      throw parse_error("unknown directive '" + kw.s + "'", kw.line, kw.col);
    }
  }

  // variable set: declared order if a var line is present, else first occurrence
  std::vector<std::string> variables;
  std::vector<char> used;
  if (var_line) {
    for (const detail::Tok& t : *var_line) {
      for (const std::string& v : variables)
        if (v == t.s) throw parse_error("duplicate variable name: " + t.s, t.line, t.col);
      variables.push_back(t.s);
    }
    used.assign(variables.size(), 0);
  }
  auto var_slot = [&](const detail::Tok& t) {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == t.s) {
        if (!used.empty()) used[i] = 1;
        return static_cast<int>(i);
      }
    if (var_line)
      throw parse_error("undeclared variable '" + t.s + "'", t.line, t.col);
    variables.push_back(t.s);
    return static_cast<int>(variables.size() - 1);
  };

  std::vector<Constraint> constraints;
  for (const RawCst& rc : csts) {
    if (!lang.find(rc.name.s))
      throw parse_error("unknown relation '" + rc.name.s + "'", rc.name.line, rc.name.col);
    Constraint c;
    c.relation = rc.name.s;
    for (const detail::Tok& t : rc.args) {
      if (!t.s.empty() && t.s[0] == '#') {
        int v = detail::parse_int({t.s.substr(1), t.line, t.col + 1}, "constant");
        if (v >= dsize) throw parse_error("constant outside domain", t.line, t.col);
        c.args.push_back(Arg::constant_of(v));
      } else {
        if (!detail::is_identifier(t.s))
          throw parse_error("bad argument '" + t.s + "'", t.line, t.col);
        c.args.push_back(Arg::variable(var_slot(t)));
      }
    }
    if (static_cast<int>(c.args.size()) != lang.find(rc.name.s)->arity())
      throw parse_error("constraint arity mismatch for " + rc.name.s, rc.name.line, rc.name.col);
    constraints.push_back(std::move(c));
  }
  if (var_line)
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (!used[i])
        throw parse_error("declared variable never occurs: " + variables[i],
                          (*var_line)[i].line, (*var_line)[i].col);

  Formula formula = [&]() {
    try {
      return Formula(std::move(lang), std::move(variables), std::move(constraints));
    } catch (const validation_error& e) {
      throw parse_error(e.what(), ts.last_line(), 1);
    }
  }();

  if (start.has_value() != target.has_value()) {
    const auto& present = start ? *start : *target;
    throw parse_error("start and target must appear together",
                      present.first.line, present.first.col);
  }
  ParsedInstance out{std::move(formula), std::nullopt, std::nullopt};
  if (start) {
    auto check = [&](const std::pair<detail::Tok, Tuple>& line) {
      if (line.second.size() != out.formula.variables().size())
        throw parse_error(line.first.s + " length must match variable count",
                          line.first.line, line.first.col);
      for (Value v : line.second)
        if (v >= dsize)
          throw parse_error(line.first.s + " value outside domain",
                            line.first.line, line.first.col);
      if (!satisfies(out.formula, line.second))
        throw parse_error(line.first.s + " is not a solution", line.first.line, line.first.col);
    };
    check(*start);
    check(*target);
    out.start = start->second;
    out.target = target->second;
  }
  return out;
}

inline std::string print_instance(const Formula& f,
                                  const Assignment* start = nullptr,
                                  const Assignment* target = nullptr) {
  std::ostringstream os;
  os << "domain " << f.domain_size() << "\n";
  for (const auto& [name, rel] : f.language().members()) {
    os << "rel " << name << " " << rel.arity() << " { ";
    for (std::size_t i = 0; i < rel.tuples().size(); ++i) {
      if (i) os << " ; ";
      os << join_values(rel.tuples()[i], ' ');
    }
    os << " }\n";
  }
  os << "var";
  for (const std::string& v : f.variables()) os << " " << v;
  os << "\n";
  for (const Constraint& c : f.constraints()) {
    os << "cst " << c.relation;
    for (const Arg& a : c.args) {
      if (a.is_var())
        os << " " << f.variables()[a.var];
      else
        os << " #" << a.constant;
    }
    os << "\n";
  }
  if (start) os << "start " << join_values(*start, ' ') << "\n";
  if (target) os << "target " << join_values(*target, ' ') << "\n";
  return os.str();
}

inline std::string print_instance(const RcspInstance& inst) {
  return print_instance(inst.formula, &inst.start, &inst.target);
}

}  // namespace rcsp

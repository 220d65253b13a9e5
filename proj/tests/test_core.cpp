#include <catch2/catch_amalgamated.hpp>

#include "rcsp/generators.hpp"
#include "rcsp/relation.hpp"
#include "rcsp/text.hpp"

using namespace rcsp;

namespace {

Relation rel2(std::vector<Tuple> ts, int arity) { return Relation(2, arity, std::move(ts)); }

}  // namespace

TEST_CASE("hamming distance") {
  CHECK(hamming_distance({0, 1, 1}, {0, 1, 1}) == 0);
  CHECK(hamming_distance({0, 1, 1}, {1, 1, 0}) == 2);
  CHECK(hamming_distance({0}, {1}) == 1);
  CHECK_THROWS_AS(hamming_distance({0, 1}, {0, 1, 0}), validation_error);
}

TEST_CASE("relation construction normalizes and validates") {
  Relation r(2, 2, {{1, 1}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(r.size() == 3);
  CHECK(r.tuples() == std::vector<Tuple>{{0, 1}, {1, 0}, {1, 1}});
  CHECK(r.contains({1, 0}));
  CHECK(!r.contains({0, 0}));

  CHECK_THROWS_AS(Relation(1, 2, {}), validation_error);
  CHECK_THROWS_AS(Relation(2, 0, {}), validation_error);
  CHECK_THROWS_AS(Relation(2, 2, {{0, 2}}), validation_error);
  CHECK_THROWS_AS(Relation(2, 2, {{0}}), validation_error);
  CHECK_THROWS_AS(Relation(2, 25, {}), cap_error);

  CHECK(Relation::full(2, 3).size() == 8);
  CHECK(Relation::empty(3, 2).is_empty());
}

TEST_CASE("total order") {
  TotalOrder nat = TotalOrder::natural(3);
  CHECK(nat.less(0, 2));
  CHECK(nat.least() == 0);
  TotalOrder rev({2, 1, 0});
  CHECK(rev.less(2, 0));
  CHECK(rev.min_of(0, 1) == 1);
  CHECK(rev.to_string() == "2,1,0");
  CHECK_THROWS_AS(TotalOrder({0, 0, 1}), validation_error);
  CHECK_THROWS_AS(TotalOrder({0, 2}), validation_error);
}

TEST_CASE("apply pattern substitutes, identifies, and projects") {
  // striking one tuple from the full binary relation
  Relation r01 = rel2({{0, 0}, {1, 0}, {1, 1}}, 2);  // all but (0,1)
  Pattern p;
  p.entries = {PatternEntry::constant_of(0), PatternEntry::variable(1)};
  Relation image = apply_pattern(r01, p);
  CHECK(image.arity() == 1);
  CHECK(image.tuples() == std::vector<Tuple>{{0}});

  Relation r00 = rel2({{0, 1}, {1, 0}, {1, 1}}, 2);  // all but (0,0)
  Pattern diag;
  diag.entries = {PatternEntry::variable(2), PatternEntry::variable(2)};
  CHECK(apply_pattern(r00, diag).tuples() == std::vector<Tuple>{{1}});

  Relation nae = gen_named_boolean("NAE");
  Pattern fix0 = Pattern::parse("x1,x2,#0");
  CHECK(apply_pattern(nae, fix0) == gen_named_boolean("OR"));

  CHECK(apply_pattern(nae, Pattern::identity(3)) == nae);

  Pattern none;
  none.entries = {PatternEntry::constant_of(0), PatternEntry::constant_of(1)};
  CHECK_THROWS_AS(apply_pattern(r00, none), validation_error);
  CHECK(apply_pattern(r00, none, true).arity() == 1);

  Pattern wrong = Pattern::parse("x1,x2,x3");
  CHECK_THROWS_AS(apply_pattern(r00, wrong), validation_error);
}

TEST_CASE("pattern strings round-trip") {
  for (const char* s : {"x1,x2,#0", "x2,x2,x1", "#1,#0,x1"}) {
    Pattern p = Pattern::parse(s);
    CHECK(p.to_string() == s);
  }
  CHECK_THROWS_AS(Pattern::parse(""), validation_error);
  CHECK_THROWS_AS(Pattern::parse("x0"), validation_error);
  CHECK_THROWS_AS(Pattern::parse("y1"), validation_error);
}

TEST_CASE("pattern composition commutes with application") {
  SplitMix64 rng(1u);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int d = 2 + static_cast<int>(rng.below(2));
    int arity = 2 + static_cast<int>(rng.below(3));
    std::vector<Tuple> ts;
    Tuple t(arity, 0);
    std::uint64_t cells = checked_pow(d, arity);
    for (std::uint64_t i = 0; i < cells; ++i) {
      if (rng.below(2)) ts.push_back(t);
      int k = arity - 1;
      while (k >= 0 && t[k] == d - 1) t[k--] = 0;
      if (k >= 0) ++t[k];
    }
    Relation r(d, arity, ts);

    Pattern p;
    for (int i = 0; i < arity; ++i) {
      if (rng.below(4) == 0)
        p.entries.push_back(PatternEntry::constant_of(static_cast<Value>(rng.below(d))));
      else
        p.entries.push_back(PatternEntry::variable(static_cast<int>(rng.below(3))));
    }
    if (p.distinct_vars().empty()) continue;
    int q_arity = static_cast<int>(p.distinct_vars().size());
    Pattern q;
    for (int i = 0; i < q_arity; ++i) {
      if (rng.below(4) == 0)
        q.entries.push_back(PatternEntry::constant_of(static_cast<Value>(rng.below(d))));
      else
        q.entries.push_back(PatternEntry::variable(static_cast<int>(rng.below(3))));
    }
    if (q.distinct_vars().empty()) continue;

    Relation lhs = apply_pattern(apply_pattern(r, p), q);
    Relation rhs = apply_pattern(r, compose_patterns(p, q));
    CHECK(lhs == rhs);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("product concatenates componentwise") {
  Relation eq = gen_named_boolean("EQ");
  Relation one = rel2({{1}}, 1);
  Relation prod = product(eq, one);
  CHECK(prod.arity() == 3);
  CHECK(prod.tuples() == std::vector<Tuple>{{0, 0, 1}, {1, 1, 1}});

  CHECK(product(gen_named_boolean("OR"), gen_named_boolean("NAND")).size() == 9);
  CHECK_THROWS_AS(product(eq, Relation::full(3, 1)), validation_error);
}

TEST_CASE("connected components of known relations") {
  // the arity-3 member of the minimally-not-SCB family is a single path
  Relation m3 = gen_m_family(3);
  auto comps = connected_components(m3);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].size() == 5);

  auto eq_comps = connected_components(gen_named_boolean("EQ"));
  REQUIRE(eq_comps.size() == 2);
  CHECK(eq_comps[0] == std::vector<Tuple>{{0, 0}});
  CHECK(eq_comps[1] == std::vector<Tuple>{{1, 1}});

  CHECK(connected_components(gen_named_boolean("NAE")).size() == 1);
  CHECK(connected_components(Relation::empty(2, 2)).empty());
}

TEST_CASE("components partition the relation with no cross edges") {
  SplitMix64 rng(7u);
  for (int trial = 0; trial < 120; ++trial) {
    int d = 2 + static_cast<int>(rng.below(2));
    int arity = 1 + static_cast<int>(rng.below(3));
    std::vector<Tuple> ts;
    Tuple t(arity, 0);
    std::uint64_t cells = checked_pow(d, arity);
    for (std::uint64_t i = 0; i < cells; ++i) {
      if (rng.below(3) == 0) ts.push_back(t);
      int k = arity - 1;
      while (k >= 0 && t[k] == d - 1) t[k--] = 0;
      if (k >= 0) ++t[k];
    }
    Relation r(d, arity, ts);
    auto comps = connected_components(r);

    std::size_t total = 0;
    std::vector<Tuple> all;
    for (const auto& c : comps) {
      total += c.size();
      CHECK(std::is_sorted(c.begin(), c.end()));
      all.insert(all.end(), c.begin(), c.end());
    }
    CHECK(total == r.size());
    std::sort(all.begin(), all.end());
    CHECK(all == r.tuples());

    for (std::size_t i = 0; i < comps.size(); ++i)
      for (std::size_t j = i + 1; j < comps.size(); ++j) {
        CHECK(comps[i].front() < comps[j].front());  // listed by least member
        for (const Tuple& a : comps[i])
          for (const Tuple& b : comps[j])
            CHECK(hamming_distance(a, b) >= 2);
      }
  }
}

TEST_CASE("dual flips the Boolean domain") {
  CHECK(dual(gen_named_boolean("OR")) == gen_named_boolean("NAND"));
  CHECK(dual(dual(gen_named_boolean("IMPL"))) == gen_named_boolean("IMPL"));
  CHECK_THROWS_AS(dual(Relation::full(3, 1)), validation_error);
}

TEST_CASE("digraph wraps a binary relation") {
  Digraph g = Digraph::from_arcs(3, {{0, 1}, {1, 2}});
  CHECK(g.vertex_count() == 3);
  CHECK(g.has_arc(0, 1));
  CHECK(!g.has_arc(1, 0));
  CHECK_THROWS_AS(Digraph(Relation::full(2, 3)), validation_error);
  CHECK(Digraph::from_edges(2, {{0, 1}}).has_arc(1, 0));
}

TEST_CASE("relation text format round-trips") {
  Relation nae = gen_named_boolean("NAE");
  std::string text = print_relation("NAE", nae);
  auto [name, parsed] = parse_relation(text);
  CHECK(name == "NAE");
  CHECK(parsed == nae);
  CHECK(print_relation(name, parsed) == text);

  ConstraintLanguage lang(2);
  lang.add("OR", gen_named_boolean("OR"));
  lang.add("IMPL", gen_named_boolean("IMPL"));
  std::string ltext = print_language(lang);
  CHECK(parse_language(ltext) == lang);

  // comments and layout freedom
  auto [n2, r2] = parse_relation("# header comment\nrel T 2 over 2\n0 0  1 1\n");
  CHECK(n2 == "T");
  CHECK(r2 == gen_named_boolean("EQ"));
}

TEST_CASE("relation text format rejects malformed input") {
  CHECK_THROWS_AS(parse_language(""), parse_error);
  CHECK_THROWS_AS(parse_language("rel R 2 over 2\n0 0 1\n"), parse_error);  // dangling
  CHECK_THROWS_AS(parse_language("rel R 2 over 2\n0 0\nrel S 2 over 3\n0 0\n"), parse_error);
  CHECK_THROWS_AS(parse_language("rel R two over 2\n"), parse_error);
  CHECK_THROWS_AS(parse_language("relation R 2 over 2\n"), parse_error);
  CHECK_THROWS_AS(parse_relation("rel R 2 over 2\n0 0\nrel S 2 over 2\n0 0\n"), parse_error);
  CHECK_THROWS_AS(parse_language("rel R 2 over 2\n0 3\n"), parse_error);
}

TEST_CASE("random relation text round-trip") {
  SplitMix64 rng(11u);
  for (int trial = 0; trial < 120; ++trial) {
    int d = 2 + static_cast<int>(rng.below(3));
    int arity = 1 + static_cast<int>(rng.below(3));
    std::vector<Tuple> ts;
    Tuple t(arity, 0);
    std::uint64_t cells = checked_pow(d, arity);
    for (std::uint64_t i = 0; i < cells; ++i) {
      if (rng.below(2)) ts.push_back(t);
      int k = arity - 1;
      while (k >= 0 && t[k] == d - 1) t[k--] = 0;
      if (k >= 0) ++t[k];
    }
    Relation r(d, arity, ts);
    auto [name, back] = parse_relation(print_relation("R", r));
    CHECK(name == "R");
    CHECK(back == r);
  }
}

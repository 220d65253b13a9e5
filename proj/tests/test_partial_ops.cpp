#include <catch2/catch_amalgamated.hpp>

#include "rcsp/generators.hpp"
#include "rcsp/partial_op.hpp"
#include "rcsp/text.hpp"

using namespace rcsp;

TEST_CASE("partial Maltsev tables over the Boolean domain") {
  PartialOperation mp = make_partial_maltsev(2);
  CHECK(mp.arity() == 3);
  CHECK(mp.domain_card() == 6);
  CHECK(mp.apply({0, 0, 0}) == 0);
  CHECK(mp.apply({1, 1, 1}) == 1);
  CHECK(mp.apply({0, 1, 1}) == 0);
  CHECK(mp.apply({1, 0, 0}) == 1);
  CHECK(mp.apply({1, 1, 0}) == 0);
  CHECK(mp.apply({0, 0, 1}) == 1);
  CHECK(!mp.apply({0, 1, 0}).has_value());
  CHECK(!mp.apply({1, 0, 1}).has_value());
  CHECK(mp.is_idempotent());
  CHECK(!mp.is_total());
}

TEST_CASE("ordered Maltsev tables over the Boolean domain") {
  PartialOperation asc = make_ordered_maltsev(2, TotalOrder::natural(2));
  CHECK(asc.domain_card() == 4);
  CHECK(asc.apply({0, 0, 0}) == 0);
  CHECK(asc.apply({0, 1, 1}) == 0);
  CHECK(asc.apply({1, 1, 0}) == 0);
  CHECK(asc.apply({1, 1, 1}) == 1);
  CHECK(!asc.apply({1, 0, 0}).has_value());
  CHECK(!asc.apply({0, 0, 1}).has_value());

  PartialOperation desc = make_ordered_maltsev(2, TotalOrder({1, 0}));
  CHECK(desc.domain_card() == 4);
  CHECK(desc.apply({0, 0, 0}) == 0);
  CHECK(desc.apply({1, 0, 0}) == 1);
  CHECK(desc.apply({0, 0, 1}) == 1);
  CHECK(desc.apply({1, 1, 1}) == 1);
  CHECK(!desc.apply({0, 1, 1}).has_value());
  CHECK(!desc.apply({1, 1, 0}).has_value());
}

TEST_CASE("ordered Maltsev domain has one cell per value pair") {
  for (int d = 2; d <= 5; ++d) {
    PartialOperation m = make_ordered_maltsev(d, TotalOrder::natural(d));
    CHECK(m.domain_card() == static_cast<std::size_t>(d) * d);
    CHECK(m.is_idempotent());
    CHECK(is_subfunction(m, make_partial_maltsev(d)));
  }
}

TEST_CASE("partial Maltsev rows beyond any ordered restriction") {
  PartialOperation mp = make_partial_maltsev(4);
  CHECK(mp.apply({3, 2, 2}) == 3);
  CHECK(mp.apply({2, 2, 1}) == 1);
  CHECK(mp.apply({2, 2, 2}) == 2);
  CHECK(!mp.apply({3, 2, 1}).has_value());
}

TEST_CASE("subfunction ordering") {
  PartialOperation mp = make_partial_maltsev(2);
  PartialOperation asc = make_ordered_maltsev(2, TotalOrder::natural(2));
  PartialOperation desc = make_ordered_maltsev(2, TotalOrder({1, 0}));

  CHECK(is_subfunction(asc, mp));
  CHECK(is_subfunction(desc, mp));
  CHECK(!is_subfunction(mp, asc));  // (1,0,0) is defined in mp only
  CHECK(!is_subfunction(asc, desc));
  CHECK(is_subfunction(mp, mp));

  PartialOperation g(2, 3);
  g.define({0, 1, 1}, 1);  // value disagrees with mp
  CHECK(!is_subfunction(g, mp));

  PartialOperation other(3, 3);
  CHECK_THROWS_AS(is_subfunction(other, mp), validation_error);
  CHECK_THROWS_AS(is_subfunction(make_min(2, TotalOrder::natural(2)), mp), validation_error);
}

TEST_CASE("subfunction order is reflexive and transitive on random ops") {
  SplitMix64 rng(3u);
  for (int trial = 0; trial < 120; ++trial) {
    int d = 2 + static_cast<int>(rng.below(2));
    int arity = 1 + static_cast<int>(rng.below(2));
    PartialOperation h(d, arity);
    Tuple key(arity, 0);
    std::uint64_t cells = checked_pow(d, arity);
    for (std::uint64_t i = 0; i < cells; ++i) {
      if (rng.below(2)) h.define(key, static_cast<Value>(rng.below(d)));
      int k = arity - 1;
      while (k >= 0 && key[k] == d - 1) key[k--] = 0;
      if (k >= 0) ++key[k];
    }
    // g: drop some rows of h; f: drop some rows of g
    PartialOperation g(d, arity), f(d, arity);
    h.for_each_defined([&](const Tuple& t, Value v) {
      if (rng.below(4)) {
        g.define(t, v);
        if (rng.below(4)) f.define(t, v);
      }
    });
    CHECK(is_subfunction(f, f));
    CHECK(is_subfunction(f, g));
    CHECK(is_subfunction(g, h));
    CHECK(is_subfunction(f, h));
  }
}

TEST_CASE("boolean majority and min") {
  PartialOperation maj = make_boolean_majority();
  CHECK(maj.is_total());
  CHECK(maj.apply({0, 1, 1}) == 1);
  CHECK(maj.apply({0, 1, 0}) == 0);

  PartialOperation mn = make_min(3, TotalOrder({2, 0, 1}));
  CHECK(mn.is_total());
  CHECK(mn.apply({0, 1}) == 0);
  CHECK(mn.apply({2, 1}) == 2);
}

TEST_CASE("componentwise application") {
  PartialOperation asc = make_ordered_maltsev(2, TotalOrder::natural(2));
  auto out = apply_componentwise(asc, {{0, 1, 1}, {1, 1, 1}, {1, 1, 0}});
  REQUIRE(out.has_value());
  CHECK(*out == Tuple{0, 1, 0});
  CHECK(!apply_componentwise(asc, {{1, 0}, {0, 0}, {0, 1}}).has_value());
  CHECK_THROWS_AS(apply_componentwise(asc, {{0, 0}, {0, 0}}), validation_error);
  CHECK_THROWS_AS(apply_componentwise(asc, {{0, 0}, {0, 0}, {0}}), validation_error);
}

TEST_CASE("invariance of known relations") {
  PartialOperation asc = make_ordered_maltsev(2, TotalOrder::natural(2));
  Relation impl = gen_named_boolean("IMPL");
  CHECK(is_invariant(impl, asc).invariant);

  InvarianceResult orr = is_invariant(gen_named_boolean("OR"), asc);
  REQUIRE(!orr.invariant);
  REQUIRE(orr.counterexample.has_value());
  // lex-first escape: rows (0,1),(1,1),(1,0) map to (0,0)
  CHECK(orr.counterexample->rows == std::vector<Tuple>{{0, 1}, {1, 1}, {1, 0}});
  CHECK(orr.counterexample->escape == Tuple{0, 0});

  CHECK(is_invariant(gen_named_boolean("EQ"), make_partial_maltsev(2)).invariant);
  CHECK(is_invariant(gen_named_boolean("NEQ"), make_partial_maltsev(2)).invariant);
  CHECK(is_invariant(Relation::empty(2, 2), asc).invariant);
  CHECK_THROWS_AS(is_invariant(Relation::full(3, 1), asc), validation_error);
  CHECK_THROWS_AS(is_invariant(Relation::full(2, 7), asc, 100), cap_error);
}

TEST_CASE("subfunctions preserve invariance") {
  // if f is a subfunction of g and R is invariant under g then R is invariant under f
  SplitMix64 rng(5u);
  int informative = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2;
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
    if (ts.empty()) continue;
    Relation r(d, arity, ts);

    PartialOperation g(d, 3);
    Tuple key(3, 0);
    for (std::uint64_t i = 0; i < 8; ++i) {
      if (rng.below(2)) g.define(key, static_cast<Value>(rng.below(d)));
      int k = 2;
      while (k >= 0 && key[k] == d - 1) key[k--] = 0;
      if (k >= 0) ++key[k];
    }
    if (!is_invariant(r, g).invariant) continue;
    PartialOperation f(d, 3);
    g.for_each_defined([&](const Tuple& kt, Value v) {
      if (rng.below(3)) f.define(kt, v);
    });
    REQUIRE(is_subfunction(f, g));
    CHECK(is_invariant(r, f).invariant);
    ++informative;
  }
  CHECK(informative >= 100);
}

TEST_CASE("operation text format round-trips") {
  PartialOperation mp = make_partial_maltsev(3);
  std::string text = print_operation("mp3", mp);
  auto [name, parsed] = parse_operation(text);
  CHECK(name == "mp3");
  CHECK(parsed == mp);
  CHECK(print_operation(name, parsed) == text);

  auto [n2, op2] = parse_operation("pop f 2 over 2\n0 0 -> 1\n1 1 -> 0\n");
  CHECK(n2 == "f");
  CHECK(op2.apply({0, 0}) == 1);
  CHECK(!op2.apply({0, 1}).has_value());

  CHECK_THROWS_AS(parse_operation("pop f 2 over 2\n0 0 -> 2\n"), parse_error);
  CHECK_THROWS_AS(parse_operation("pop f 2 over 2\n0 -> 1\n"), parse_error);
  CHECK_THROWS_AS(parse_operation("pop f 2 over 2\n0 0 -> 0\n0 0 -> 1\n"), parse_error);
  CHECK_THROWS_AS(parse_operation("op f 2 over 2\n"), parse_error);
}

TEST_CASE("conflicting definitions are rejected, repeats are not") {
  PartialOperation f(2, 2);
  f.define({0, 1}, 1);
  CHECK_NOTHROW(f.define({0, 1}, 1));
  CHECK_THROWS_AS(f.define({0, 1}, 0), validation_error);
  CHECK_THROWS_AS(f.define({0, 2}, 0), validation_error);
  CHECK_THROWS_AS(f.define({0}, 0), validation_error);
  CHECK_THROWS_AS(f.define({0, 0}, 2), validation_error);
}

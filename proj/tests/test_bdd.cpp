#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "eoc/bdd.hpp"
#include "eoc/bits.hpp"

using namespace eoc;

namespace {

/// Truth-table oracle: enumerates all assignments over `vars`.
std::vector<bool> oracle_table(const Bdd& f,
                               const std::vector<std::uint32_t>& vars,
                               std::uint32_t width) {
  std::vector<bool> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << vars.size()); ++m) {
    BitVec a(width);
    for (std::size_t k = 0; k < vars.size(); ++k)
      a.set(vars[k], (m >> k) & 1);
    out.push_back(bdd_evaluate(f, a));
  }
  return out;
}

/// Random function over `vars` built as a xor/and/or tree of literals.
Bdd random_bdd(BddStore& store, Rng& rng,
               const std::vector<std::uint32_t>& order, int terms) {
  Bdd acc = bdd_const(store, rng.bit());
  acc.order = order;
  for (int t = 0; t < terms; ++t) {
    Bdd lit = bdd_var(store, order[rng.below(
        static_cast<std::uint32_t>(order.size()))]);
    lit.order = order;
    if (rng.bit()) lit = bdd_swap_terminals(lit);
    const auto op = static_cast<BddOp>(rng.below(3));
    acc = bdd_apply(op, acc, lit);
    acc.order = order;
  }
  return acc;
}

}  // namespace

TEST_CASE("constants and single variables") {
  BddStore store;
  CHECK(bdd_const(store, true).root == kTrueNode);
  CHECK(bdd_const(store, false).root == kFalseNode);
  CHECK(bdd_node_count(bdd_const(store, false)) == 1);

  const Bdd v = bdd_var(store, 3);
  CHECK(bdd_node_count(v) == 3);  // one decision node plus both terminals
  BitVec a(5);
  CHECK(!bdd_evaluate(v, a));
  a.set(3, true);
  CHECK(bdd_evaluate(v, a));
}

TEST_CASE("apply basics") {
  BddStore store;
  const Bdd f = bdd_var(store, 0);
  CHECK(bdd_apply(BddOp::kXor, f, f).root == kFalseNode);
  const Bdd g = bdd_var(store, 1);
  Bdd t = bdd_const(store, true);
  const Bdd tg = bdd_apply(BddOp::kAnd, t, g);
  CHECK(tg.root == g.root);

  // Canonicity: the same function built two syntactic ways has the same
  // root under the same order.
  const Bdd or1 = bdd_apply(BddOp::kOr, f, g);
  const Bdd via_xor = bdd_apply(
      BddOp::kXor, bdd_apply(BddOp::kXor, f, g), bdd_apply(BddOp::kAnd, f, g));
  CHECK(or1.root == via_xor.root);
  CHECK(or1.order == via_xor.order);
}

TEST_CASE("apply matches the enumeration oracle") {
  BddStore store;
  Rng rng(Seed256::from_u64(31));
  const std::vector<std::uint32_t> order{0, 1, 2, 3, 4, 5};
  for (int trial = 0; trial < 30; ++trial) {
    const Bdd f = random_bdd(store, rng, order, 8);
    const Bdd g = random_bdd(store, rng, order, 8);
    const Bdd fx = bdd_apply(BddOp::kXor, f, g);
    const auto tf = oracle_table(f, order, 6);
    const auto tg = oracle_table(g, order, 6);
    const auto tx = oracle_table(fx, order, 6);
    for (std::size_t i = 0; i < 64; ++i) CHECK(tx[i] == (tf[i] ^ tg[i]));
    bdd_check_reduced_ordered(fx);
  }
}

TEST_CASE("order conflicts are refused") {
  BddStore store;
  Bdd f = bdd_var(store, 0);
  f.order = {0, 1};
  Bdd g = bdd_var(store, 1);
  g.order = {1, 0};
  CHECK_THROWS_AS(bdd_apply(BddOp::kAnd, f, g), ValidationError);
}

TEST_CASE("compose") {
  BddStore store;
  Rng rng(Seed256::from_u64(37));
  const std::vector<std::uint32_t> order{0, 1, 2, 3, 4, 5};

  Bdd f = random_bdd(store, rng, order, 8);
  CHECK(bdd_compose(f, 2, bdd_var(store, 2)).root == f.root);
  Bdd v2 = bdd_var(store, 2);
  const Bdd g = random_bdd(store, rng, {3, 4, 5}, 6);
  CHECK(bdd_compose(v2, 2, g).root == g.root);

  // Random case vs oracle: substitute var 1 by a function of {3, 4, 5}.
  for (int trial = 0; trial < 20; ++trial) {
    const Bdd h = random_bdd(store, rng, order, 8);
    const Bdd s = random_bdd(store, rng, {3, 4, 5}, 5);
    const Bdd composed = bdd_compose(h, 1, s);
    for (std::uint64_t m = 0; m < 64; ++m) {
      BitVec a(6);
      for (std::size_t k = 0; k < 6; ++k) a.set(k, (m >> k) & 1);
      BitVec b = a;
      b.set(1, bdd_evaluate(s, a));
      CHECK(bdd_evaluate(composed, a) == bdd_evaluate(h, b));
    }
    bdd_check_reduced_ordered(composed);
  }
}

TEST_CASE("reorder_var_last") {
  BddStore store;
  Rng rng(Seed256::from_u64(41));
  const std::vector<std::uint32_t> order{0, 1, 2, 3, 4, 5};
  for (int trial = 0; trial < 30; ++trial) {
    const Bdd f = random_bdd(store, rng, order, 10);
    const std::uint32_t v = rng.below(6);
    const Bdd r = bdd_reorder_var_last(f, v);
    CHECK(r.order.back() == v);
    // Same function read through a different order.
    for (std::uint64_t m = 0; m < 64; ++m) {
      BitVec a(6);
      for (std::size_t k = 0; k < 6; ++k) a.set(k, (m >> k) & 1);
      CHECK(bdd_evaluate(f, a) == bdd_evaluate(r, a));
    }
    bdd_check_reduced_ordered(r);
  }
  // Already-last and absent-variable cases are no-ops.
  Bdd f = bdd_var(store, 2);
  f.order = {0, 2};
  const Bdd same = bdd_reorder_var_last(f, 2);
  CHECK(same.root == f.root);
  const Bdd absent = bdd_reorder_var_last(f, 9);
  CHECK(absent.root == f.root);
  CHECK(bdd_node_count(absent) == bdd_node_count(f));
}

TEST_CASE("flip_var_branches") {
  BddStore store;
  const Bdd v = bdd_var(store, 0);
  const Bdd flipped = bdd_flip_var_branches(v, 0);
  BitVec a(1);
  CHECK(bdd_evaluate(flipped, a));  // NOT x0 at x0 = 0
  a.set(0, true);
  CHECK(!bdd_evaluate(flipped, a));

  Rng rng(Seed256::from_u64(43));
  const std::vector<std::uint32_t> order{0, 1, 2, 3};
  for (int trial = 0; trial < 30; ++trial) {
    const Bdd f = random_bdd(store, rng, order, 8);
    const std::uint32_t var = rng.below(4);
    const Bdd g = bdd_flip_var_branches(f, var);
    CHECK(bdd_node_count(g) == bdd_node_count(f));
    CHECK(bdd_flip_var_branches(g, var).root == f.root);  // involution
    for (std::uint64_t m = 0; m < 16; ++m) {
      BitVec x(4);
      for (std::size_t k = 0; k < 4; ++k) x.set(k, (m >> k) & 1);
      BitVec y = x;
      y.flip(var);
      CHECK(bdd_evaluate(g, x) == bdd_evaluate(f, y));
    }
  }
}

TEST_CASE("swap_terminals") {
  BddStore store;
  CHECK(bdd_swap_terminals(bdd_const(store, true)).root == kFalseNode);
  Rng rng(Seed256::from_u64(47));
  const std::vector<std::uint32_t> order{0, 1, 2, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const Bdd f = random_bdd(store, rng, order, 8);
    const Bdd n = bdd_swap_terminals(f);
    CHECK(bdd_node_count(n) == bdd_node_count(f));
    CHECK(bdd_swap_terminals(n).root == f.root);
    for (std::uint64_t m = 0; m < 16; ++m) {
      BitVec x(4);
      for (std::size_t k = 0; k < 4; ++k) x.set(k, (m >> k) & 1);
      CHECK(bdd_evaluate(n, x) == !bdd_evaluate(f, x));
    }
  }
}

TEST_CASE("evaluate refuses missing variables") {
  BddStore store;
  const Bdd v = bdd_var(store, 7);
  BitVec small(3);
  CHECK_THROWS_AS(bdd_evaluate(v, small), ValidationError);
}

TEST_CASE("every 3-variable function fits in 7 non-terminal nodes") {
  BddStore store;
  std::size_t worst = 0;
  for (int tt = 0; tt < 256; ++tt) {
    // Build from the truth table via Shannon expansion.
    Bdd f = bdd_const(store, false);
    f.order = {0, 1, 2};
    for (int m = 0; m < 8; ++m) {
      if (!((tt >> m) & 1)) continue;
      Bdd term = bdd_const(store, true);
      term.order = {0, 1, 2};
      for (std::uint32_t k = 0; k < 3; ++k) {
        Bdd lit = bdd_var(store, k);
        lit.order = {0, 1, 2};
        if (!((m >> k) & 1)) lit = bdd_swap_terminals(lit);
        term = bdd_apply(BddOp::kAnd, term, lit);
      }
      f = bdd_apply(BddOp::kOr, f, term);
    }
    const std::size_t count = bdd_node_count(f);
    worst = std::max(worst, count);
    CHECK(count <= 9);  // 7 non-terminals plus both terminals
  }
  CHECK(worst == 9);
}

TEST_CASE("expand_vars grafts coordinate functions in place") {
  BddStore store;
  // f = x0 XOR x4 over order {0, 4}; expand x0 -> majority(x0, x1, x2).
  Bdd f = bdd_apply(BddOp::kXor, bdd_var(store, 0), bdd_var(store, 4));
  std::uint8_t maj = 0;
  for (int m = 0; m < 8; ++m) {
    const int w = (m & 1) + ((m >> 1) & 1) + ((m >> 2) & 1);
    if (w >= 2) maj |= static_cast<std::uint8_t>(1u << m);
  }
  std::map<std::uint32_t, VarExpansion> subs{
      {0, VarExpansion{{0, 1, 2}, maj}}};
  const Bdd g = bdd_expand_vars(f, subs);
  CHECK(g.order == std::vector<std::uint32_t>{0, 1, 2, 4});
  for (std::uint64_t m = 0; m < 32; ++m) {
    BitVec a(5);
    for (std::size_t k = 0; k < 5; ++k) a.set(k, (m >> k) & 1);
    const bool major = (a.test(0) + a.test(1) + a.test(2)) >= 2;
    CHECK(bdd_evaluate(g, a) == (major ^ a.test(4)));
  }
  bdd_check_reduced_ordered(g);
  // Trio members already present are rejected.
  std::map<std::uint32_t, VarExpansion> bad{{4, VarExpansion{{0, 4, 5}, maj}}};
  CHECK_THROWS_AS(bdd_expand_vars(f, bad), InternalError);
}

TEST_CASE("serialization is deterministic and round trips") {
  BddStore store;
  Rng rng(Seed256::from_u64(53));
  const std::vector<std::uint32_t> order{0, 1, 2, 3, 4};
  const Bdd f = random_bdd(store, rng, order, 12);

  std::ostringstream a, b;
  serialize_bdd(f, a);
  serialize_bdd(f, b);
  CHECK(a.str() == b.str());

  BddStore other;
  std::istringstream in(a.str());
  const Bdd g = parse_bdd(in, other);
  CHECK(g.order == f.order);
  for (std::uint64_t m = 0; m < 32; ++m) {
    BitVec x(5);
    for (std::size_t k = 0; k < 5; ++k) x.set(k, (m >> k) & 1);
    CHECK(bdd_evaluate(g, x) == bdd_evaluate(f, x));
  }
  std::ostringstream c;
  serialize_bdd(g, c);
  CHECK(c.str() == a.str());
}

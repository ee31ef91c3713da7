#include <gtest/gtest.h>

#include <random>
#include <set>

#include "asmlc/combinators.hpp"
#include "asmlc/good_terms.hpp"
#include "asmlc/lambda/parse.hpp"
#include "asmlc/lambda/reduce.hpp"
#include "corpus.hpp"

using namespace asmlc;
using namespace asmlc::lambda;

namespace {

Term P(const char* s) { return parse_term(s); }

// Naturals mod 8 with total successor and comparison.
FSignature mod8_sig() {
  FSignature sig = FSignature::booleans();
  sig.add({"succ", {"Nat"}, "Nat", [](std::span<const Value> a) -> std::optional<Value> {
             return Value::nat((a[0].as_nat() + 1) % 8);
           }});
  sig.add({"lt", {"Nat", "Nat"}, "Bool", [](std::span<const Value> a) -> std::optional<Value> {
             return Value::boolean(a[0].as_nat() < a[1].as_nat());
           }});
  sig.add({"zero", {}, "Nat", [](std::span<const Value>) -> std::optional<Value> {
             return Value::nat(0);
           }});
  return sig;
}

Vocabulary tree_vocab() {
  Vocabulary vocab;
  Sort s{"S", {}};
  for (std::uint64_t i = 0; i < 4; ++i) s.carrier.push_back(Value::nat(i, "S"));
  vocab.add_sort(s);
  vocab.add_symbol(table_symbol(vocab, "h", {"S"}, "S",
                                {{{Value::nat(0, "S")}, Value::nat(1, "S")},
                                 {{Value::nat(1, "S")}, Value::nat(2, "S")},
                                 {{Value::nat(2, "S")}, Value::nat(3, "S")},
                                 {{Value::nat(3, "S")}, Value::nat(0, "S")}}));
  std::vector<std::pair<Tuple, Value>> g;
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) {
      for (std::uint64_t c = 0; c < 4; ++c) {
        g.push_back({{Value::nat(a, "S"), Value::nat(b, "S"), Value::nat(c, "S")},
                     Value::nat((a + 2 * b + 3 * c) % 4, "S")});
      }
    }
  }
  vocab.add_symbol(table_symbol(vocab, "g", {"S", "S", "S"}, "S", g));
  for (const char* name : {"x", "y", "z"}) {
    Symbol d;
    d.name = name;
    d.kind = SymbolKind::Dynamic;
    d.result_sort = "S";
    vocab.add_symbol(d);
  }
  return vocab;
}

Expr A(std::string name, std::vector<Expr> args = {}) { return Expr::apply(std::move(name), std::move(args)); }

// g(h(y), x, g(z, z, x))
Expr tree_expr() { return A("g", {A("h", {A("y")}), A("x"), A("g", {A("z"), A("z"), A("x")})}); }

}  // namespace

TEST(GoodTerms, EuclidTermsTranslate) {
  Machine m = asmlc::testing::load_example("euclid.asm");
  Term r = good::from_asm_term(m.vocab, A("rem", {A("a"), A("b")}));
  EXPECT_EQ(r, P("#rem x_a x_b"));
  EXPECT_EQ(good::const_nodes(r), 1u);
  Term g = good::from_asm_term(m.vocab, A("lt", {A("zero"), A("b")}));
  EXPECT_EQ(g, P("#lt #zero x_b"));
  EXPECT_EQ(good::const_nodes(g), 2u);
  EXPECT_TRUE(good::is_good(g, good::signature_of(m.vocab)));
}

TEST(GoodTerms, NonzeroArityDynamicIsRejected) {
  Machine m = asmlc::testing::load_example("doubling.asm");
  EXPECT_THROW(good::from_asm_term(m.vocab, A("f", {A("i")})), good::NotTypeZero);
}

TEST(GoodTerms, CompositionTreeCostIsItsConstantCount) {
  Vocabulary vocab = tree_vocab();
  FSignature sig = good::signature_of(vocab);
  Term t = good::from_asm_term(vocab, tree_expr());
  ASSERT_TRUE(good::is_good(t, sig));
  // g, h and the inner g: three constant occurrences.
  EXPECT_EQ(good::const_nodes(t), 3u);
  std::set<std::uint64_t> costs;
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::uint64_t y = 0; y < 4; ++y) {
      for (std::uint64_t z = 0; z < 4; ++z) {
        good::Valuation val{{"x_x", Value::nat(x, "S")}, {"x_y", Value::nat(y, "S")}, {"x_z", Value::nat(z, "S")}};
        auto c = good::reduce_cost(t, sig, val);
        ASSERT_TRUE(c);
        EXPECT_EQ(c->beta_count, 0u);
        costs.insert(c->f_count);
        State s;
        s.dynamic["x"][{}] = Value::nat(x, "S");
        s.dynamic["y"][{}] = Value::nat(y, "S");
        s.dynamic["z"][{}] = Value::nat(z, "S");
        auto expected = eval_ground(vocab, s, tree_expr());
        ASSERT_TRUE(expected);
        EXPECT_EQ(c->value, *expected);
        EXPECT_EQ(good::denote(t, sig, val), expected);
      }
    }
  }
  EXPECT_EQ(costs, std::set<std::uint64_t>{3});
}

TEST(GoodTerms, LeafCostsNothing) {
  auto c = good::reduce_cost(Term::var("x_a"), FSignature::booleans(), {{"x_a", Value::boolean(true)}});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->f_count, 0u);
  EXPECT_EQ(c->value, Value::boolean(true));
}

TEST(GoodTerms, UndefinedApplicationHasNoCost) {
  Machine m = asmlc::testing::load_example("euclid.asm");
  FSignature sig = good::signature_of(m.vocab);
  Term r = good::from_asm_term(m.vocab, A("rem", {A("a"), A("b")}));
  EXPECT_FALSE(good::reduce_cost(r, sig, {{"x_a", Value::nat(3)}, {"x_b", Value::nat(0)}}));
  EXPECT_FALSE(good::denote(r, sig, {{"x_a", Value::nat(3)}, {"x_b", Value::nat(0)}}));
}

TEST(GoodTerms, FoldRemovesGroundRedexes) {
  FSignature sig = mod8_sig();
  Term t = P("#lt (#succ #zero) x");
  Term f = good::fold(t, sig);
  EXPECT_EQ(f, Term::app(Term::app(Term::constant("lt"), Term::code(Value::nat(1))), Term::var("x")));
  EXPECT_FALSE(leftmost_f_redex(f, sig));
}

TEST(Curry, OneStepToFAppliedToItself) {
  std::mt19937 rng(7);
  const char* samples[] = {"\\y. z", "\\f. f f", "\\a b. b a", "\\x. x", "\\u v w. u (v w)"};
  for (const char* s : samples) {
    Term f = P(s);
    if (!f.closed()) continue;
    Term theta = comb::curry_fixpoint(f);
    auto r = reduce_leftmost(theta, 1, TraceMode::CountsOnly);
    EXPECT_EQ(r.trace.beta_count, 1u);
    EXPECT_EQ(r.term, Term::app(f, theta));
  }
}

TEST(Curry, ConstantFunctionFixpointNormalizesInTwoSteps) {
  auto r = reduce_leftmost(comb::curry_fixpoint(P("\\y. z")), 100);
  EXPECT_EQ(r.status, ReduceStatus::Normal);
  EXPECT_EQ(r.trace.beta_count, 2u);
  EXPECT_EQ(r.term, P("z"));
}

TEST(Curry, IdentityFixpointCycles) {
  Term theta = comb::curry_fixpoint(P("\\x. x"));
  auto r = reduce_leftmost(theta, 2);
  EXPECT_EQ(r.term, theta);
}

TEST(Pad, PlainVariantDoesFStepsThenBetaSteps) {
  FSignature sig = FSignature::booleans();
  const Term theta = P("\\a b. b a");
  const Term t = P("\\q. q");
  for (int K = 2; K <= 8; ++K) {
    for (int L = 0; L <= 4; ++L) {
      Term start = Term::apps(comb::pad({K, L}), {theta, t});
      auto r = reduce_leftmost_f(start, sig, static_cast<std::uint64_t>(K + L));
      ASSERT_EQ(r.trace.f_count, static_cast<std::uint64_t>(L));
      ASSERT_EQ(r.trace.beta_count, static_cast<std::uint64_t>(K));
      for (int j = 0; j < K + L; ++j) {
        EXPECT_EQ(r.trace.steps[j].kind, j < L ? RedexKind::F : RedexKind::Beta) << K << "," << L;
      }
      EXPECT_EQ(r.term, Term::app(theta, t));
    }
  }
}

TEST(Pad, FFreeVariantHasNoFRedex) {
  FSignature sig = FSignature::booleans();
  const Term theta = P("\\a. a");
  for (int K = 3; K <= 8; ++K) {
    for (int L = 0; L <= 4; ++L) {
      Term p = comb::pad({K, L, "not", Value::boolean(true), true});
      EXPECT_FALSE(leftmost_f_redex(p, sig));
      auto r = reduce_leftmost_f(Term::app(p, theta), sig, static_cast<std::uint64_t>(K + L));
      EXPECT_EQ(r.trace.f_count, static_cast<std::uint64_t>(L));
      EXPECT_EQ(r.trace.beta_count, static_cast<std::uint64_t>(K));
      EXPECT_EQ(r.trace.steps[0].kind, RedexKind::Beta);
      for (int j = 1; j <= L; ++j) EXPECT_EQ(r.trace.steps[j].kind, RedexKind::F);
      EXPECT_EQ(r.term, theta);
    }
  }
}

TEST(Pad, BelowMinimumThrows) {
  EXPECT_THROW(comb::pad({1, 0}), Error);
  EXPECT_THROW(comb::pad({2, 0, "not", Value::boolean(true), true}), Error);
  EXPECT_THROW(comb::pad({3, -1}), Error);
}

namespace {

void expect_rounds(const comb::CompiledCombinator& cc, const FSignature& sig,
                   const std::vector<Value>& from, const std::vector<Value>& to) {
  auto rc = comb::measure_round(comb::apply_slots(cc.theta, from), cc.theta, cc.k, sig);
  EXPECT_FALSE(rc.exited);
  EXPECT_EQ(rc.beta, static_cast<std::uint64_t>(cc.K));
  EXPECT_EQ(rc.f, static_cast<std::uint64_t>(cc.L));
  EXPECT_EQ(comb::match_round(rc.result, cc.theta, cc.k), to);
}

}  // namespace

TEST(UpdateCombinator, IncrementAtConstantCost) {
  FSignature sig = mod8_sig();
  auto cc = comb::build_update_combinator({"x"}, {P("#succ x")}, sig);
  EXPECT_TRUE(cc.theta.closed());
  EXPECT_FALSE(leftmost_f_redex(cc.theta, sig));
  for (std::uint64_t n = 0; n < 3; ++n) expect_rounds(cc, sig, {Value::nat(n)}, {Value::nat(n + 1)});
}

TEST(UpdateCombinator, SwapAndIdentity) {
  FSignature sig = mod8_sig();
  auto swap = comb::build_update_combinator({"x1", "x2"}, {P("x2"), P("x1")}, sig);
  expect_rounds(swap, sig, {Value::nat(3), Value::nat(5)}, {Value::nat(5), Value::nat(3)});
  auto id = comb::build_update_combinator({"x1", "x2"}, {P("x1"), P("x2")}, sig);
  expect_rounds(id, sig, {Value::nat(3), Value::nat(5)}, {Value::nat(3), Value::nat(5)});
  EXPECT_EQ(swap.K, id.K);
  EXPECT_EQ(swap.L, id.L);
}

TEST(ConditionalCombinator, UpdateAndExitRowsCostTheSame) {
  FSignature sig = mod8_sig();
  comb::CombinatorSpec spec;
  spec.slots = {"x"};
  spec.branches.push_back({P("#lt x (#succ (#succ (#succ #zero)))"), false, {P("#succ x")}, {}});
  spec.branches.push_back({Term::code(Value::boolean(true)), true, {}, P("x")});
  for (std::uint64_t n = 0; n < 8; ++n) spec.probes.push_back({Value::nat(n)});
  auto cc = comb::build_conditional_combinator(spec, sig);
  for (std::uint64_t n = 0; n < 3; ++n) expect_rounds(cc, sig, {Value::nat(n)}, {Value::nat(n + 1)});
  for (std::uint64_t n = 3; n < 8; ++n) {
    auto rc = comb::measure_round(comb::apply_slots(cc.theta, {Value::nat(n)}), cc.theta, 1, sig);
    EXPECT_TRUE(rc.exited);
    EXPECT_EQ(rc.beta, static_cast<std::uint64_t>(cc.K));
    EXPECT_EQ(rc.f, static_cast<std::uint64_t>(cc.L));
    EXPECT_EQ(rc.result, Term::code(Value::nat(n)));
  }
}

TEST(ConditionalCombinator, UnconditionalExit) {
  FSignature sig = mod8_sig();
  comb::CombinatorSpec spec;
  spec.slots = {"x"};
  spec.branches.push_back({Term::code(Value::boolean(true)), true, {}, P("#succ x")});
  auto cc = comb::build_conditional_combinator(spec, sig);
  auto rc = comb::measure_round(comb::apply_slots(cc.theta, {Value::nat(4)}), cc.theta, 1, sig);
  EXPECT_TRUE(rc.exited);
  EXPECT_EQ(rc.result, Term::code(Value::nat(5)));
  EXPECT_EQ(rc.beta, static_cast<std::uint64_t>(cc.K));
}

TEST(ConditionalCombinator, MonotonePadding) {
  FSignature sig = mod8_sig();
  comb::CombinatorSpec spec;
  spec.slots = {"x1", "x2"};
  spec.branches.push_back({P("#lt x1 x2"), false, {P("#succ x1"), P("x2")}, {}});
  spec.branches.push_back({Term::code(Value::boolean(true)), true, {}, P("x1")});
  auto base = comb::build_conditional_combinator(spec, sig);
  for (int dk = 0; dk <= 3; ++dk) {
    for (int dl = 0; dl <= 3; ++dl) {
      spec.K = base.K_min + dk;
      spec.L = base.L_min + dl;
      auto cc = comb::build_conditional_combinator(spec, sig);
      expect_rounds(cc, sig, {Value::nat(1), Value::nat(4)}, {Value::nat(2), Value::nat(4)});
    }
  }
  spec.K = base.K_min - 1;
  spec.L = std::nullopt;
  EXPECT_THROW(comb::build_conditional_combinator(spec, sig), Error);
  spec.K = std::nullopt;
  spec.L = base.L_min - 1;
  EXPECT_THROW(comb::build_conditional_combinator(spec, sig), Error);
}

TEST(ConditionalCombinator, NoTrueGuardIsAContractViolation) {
  FSignature sig = mod8_sig();
  comb::CombinatorSpec spec;
  spec.slots = {"x"};
  spec.branches.push_back({P("#lt x #zero"), false, {P("x")}, {}});
  spec.probes.push_back({Value::nat(2)});
  EXPECT_THROW(comb::build_conditional_combinator(spec, sig), Error);
}

#include <gtest/gtest.h>

#include <random>

#include "asmlc/encodings.hpp"
#include "asmlc/lambda/confluence.hpp"
#include "asmlc/lambda/delta.hpp"
#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/lambda/parse.hpp"
#include "asmlc/lambda/reduce.hpp"

using namespace asmlc;
using namespace asmlc::lambda;

namespace {

Term P(const char* s) { return parse_term(s); }

FSignature euclid_sig() {
  FSignature sig = FSignature::booleans();
  sig.add({"rem", {"Nat", "Nat"}, "Nat", [](std::span<const Value> a) -> std::optional<Value> {
             if (a[1].as_nat() == 0) return std::nullopt;
             return Value::nat(a[0].as_nat() % a[1].as_nat());
           }, false});
  sig.add({"lt", {"Nat", "Nat"}, "Nat", [](std::span<const Value> a) -> std::optional<Value> {
             return Value::boolean(a[0].as_nat() < a[1].as_nat());
           }});
  return sig;
}

}  // namespace

TEST(BetaStep, Identity) { EXPECT_EQ(beta_step(P("(\\x. x) z"), {}), P("z")); }

TEST(BetaStep, OmegaReducesToItself) {
  Term omega = P("(\\x. x x) (\\x. x x)");
  EXPECT_EQ(beta_step(omega, {}), omega);
}

TEST(BetaStep, IfThenElseStep) {
  EXPECT_EQ(beta_step(P("(\\z. z M N) (\\x y. x)"), {}), P("(\\x y. x) M N"));
}

TEST(BetaStep, RejectsNonRedex) { EXPECT_THROW(beta_step(P("x y"), {}), NotARedex); }

TEST(LeftmostRedex, Examples) {
  EXPECT_FALSE(leftmost_redex(P("\\x. x")).has_value());
  EXPECT_EQ(*leftmost_redex(P("(\\x. x) ((\\y. y) z)")), Address{});
  // ((I I) I): the redex is the inner I I.
  EXPECT_EQ(*leftmost_redex(P("(\\x. x) (\\x. x) (\\x. x)")), Address{Step::Fun});
  // Prefix order: the redex in the function part comes first.
  EXPECT_EQ(*leftmost_redex(P("x ((\\a. a) b) ((\\c. c) d)")), (Address{Step::Fun, Step::Arg}));
  EXPECT_EQ(*leftmost_redex(P("\\w. w ((\\a. a) b)")), (Address{Step::Body, Step::Arg}));
}

TEST(LeftmostRedex, AgreesWithFirstOfAll) {
  for (const char* s : {"(\\x. x) ((\\y. y) z)", "x ((\\a. a) b) ((\\c. c) d)",
                        "(\\x. (\\y. y) x) ((\\z. z) w)", "a (\\b. (\\c. c) b) ((\\d. d) e)"}) {
    Term t = P(s);
    auto all = beta_redexes(t);
    ASSERT_FALSE(all.empty());
    EXPECT_EQ(all.front(), *leftmost_redex(t)) << s;
  }
}

TEST(ReduceLeftmost, ProjectionCostsOnePlusK) {
  auto r = reduce_leftmost(P("(\\z. z u1 u2) (\\x1 x2. x1)"), 100);
  EXPECT_EQ(r.term, P("u1"));
  EXPECT_EQ(r.trace.beta_count, 3u);
  EXPECT_EQ(r.status, ReduceStatus::Normal);
}

TEST(ReduceLeftmost, NormalFormTakesNoSteps) {
  auto r = reduce_leftmost(P("\\x. x"), 10);
  EXPECT_EQ(r.trace.length(), 0u);
  EXPECT_EQ(r.status, ReduceStatus::Normal);
}

TEST(ReduceLeftmost, OmegaExhaustsBudget) {
  auto r = reduce_leftmost(P("(\\x. x x) (\\x. x x)"), 5);
  EXPECT_EQ(r.status, ReduceStatus::BudgetExhausted);
  EXPECT_EQ(r.trace.beta_count, 5u);
}

TEST(ReduceLeftmost, TraceReplays) {
  Term t = P("(\\f x. f (f x)) (\\y. y) z");
  auto r = reduce_leftmost(t, 100);
  Term cur = t;
  for (const auto& s : r.trace.steps) {
    cur = beta_step(cur, s.address);
    EXPECT_EQ(cur, s.after);
  }
  EXPECT_EQ(cur, P("z"));
}

TEST(ReduceLeftmost, CodeHeadExpandsToScott) {
  // [True] M N behaves like (\x y. x) M N.
  auto r = reduce_leftmost(P("[True] m n"), 10);
  EXPECT_EQ(r.term, P("m"));
  EXPECT_EQ(r.trace.beta_count, 2u);
  auto r2 = reduce_leftmost(P("[3] z (\\p. p)"), 10);
  EXPECT_EQ(r2.term, P("[2]"));
}

TEST(ReduceLeftmost, Deterministic) {
  Term a = P("(\\x y. y x) ((\\q. q) w) (\\k. k)");
  Term b = P("(\\u v. v u) ((\\r. r) w) (\\m. m)");
  auto ra = reduce_leftmost(a, 50);
  auto rb = reduce_leftmost(b, 50);
  EXPECT_EQ(ra.term, rb.term);
  EXPECT_EQ(ra.trace.beta_count, rb.trace.beta_count);
}

TEST(Trace, AppendAddsCounts) {
  auto r1 = reduce_leftmost(P("(\\x. x) a"), 10);
  auto r2 = reduce_leftmost_f(P("#not [True]"), FSignature::booleans(), 10);
  Trace t = r1.trace;
  t.append(r2.trace);
  EXPECT_EQ(t.beta_count, 1u);
  EXPECT_EQ(t.f_count, 1u);
  EXPECT_EQ(t.length(), t.steps.size());
}

// ---- F-calculus ----

TEST(FRedexes, Examples) {
  auto sig = euclid_sig();
  EXPECT_EQ(f_redexes(P("#rem [12] [8]"), sig), std::vector<Address>{Address{}});
  EXPECT_TRUE(f_redexes(P("\\x. x"), sig).empty());
  EXPECT_TRUE(f_redexes(P("#rem [12] x"), sig).empty());
  // Wrong sort: no redex.
  EXPECT_TRUE(f_redexes(P("#not [3]"), sig).empty());
  // Over-application: the redex is the saturated prefix.
  EXPECT_EQ(f_redexes(P("#not [True] a b"), sig), (std::vector<Address>{{Step::Fun, Step::Fun}}));
  // Nullary constants are redexes on their own.
  EXPECT_EQ(f_redexes(P("x #True"), sig), (std::vector<Address>{{Step::Arg}}));
}

TEST(FStep, Examples) {
  auto sig = euclid_sig();
  EXPECT_EQ(f_step(P("#rem [12] [8]"), {}, sig), P("[4]"));
  EXPECT_EQ(f_step(P("#and [True] [False]"), {}, sig), P("[False]"));
  EXPECT_THROW(f_step(P("#rem [12] [0]"), {}, sig), UndefinedApplication);
  EXPECT_THROW(f_step(P("#rem [12] x"), {}, sig), NotARedex);
}

TEST(FStep, DeltaAdd) {
  DeltaType ty{{"Nat"}, "Nat"};
  FSignature sig;
  add_delta_constants(sig, ty);
  Value empty = Value::seq({}, ty.list_sort());
  Value entry = Value::tuple({Value::nat(3), Value::nat(7)}, ty.entry_sort());
  Term t = Term::apps(Term::constant(ty.name("Add")), {Term::code(empty), Term::code(entry)});
  EXPECT_EQ(f_step(t, {}, sig), Term::code(Value::seq({entry}, ty.list_sort())));
}

TEST(ReduceLeftmostF, ArithmeticComposition) {
  auto r = reduce_leftmost_f(P("#lt [0] [8]"), euclid_sig(), 10);
  EXPECT_EQ(r.term, P("[True]"));
  EXPECT_EQ(r.trace.f_count, 1u);
  EXPECT_EQ(r.trace.beta_count, 0u);
}

TEST(ReduceLeftmostF, PureTermMatchesBeta) {
  Term t = P("(\\f x. f (f x)) (\\y. y) z");
  auto a = reduce_leftmost(t, 100);
  auto b = reduce_leftmost_f(t, euclid_sig(), 100);
  EXPECT_EQ(a.term, b.term);
  EXPECT_EQ(a.trace.beta_count, b.trace.beta_count);
  EXPECT_EQ(b.trace.f_count, 0u);
}

TEST(ReduceLeftmostF, FFirstEvenWhenBetaIsLeftmost) {
  auto r = reduce_leftmost_f(P("(\\x. x) (#not [False])"), euclid_sig(), 10);
  ASSERT_EQ(r.trace.steps.size(), 2u);
  EXPECT_EQ(r.trace.steps[0].kind, RedexKind::F);
  EXPECT_EQ(r.trace.steps[1].kind, RedexKind::Beta);
  EXPECT_EQ(r.term, P("[True]"));
}

TEST(ReduceLeftmostF, UndefinedIsReported) {
  auto r = reduce_leftmost_f(P("(\\x. x) (#rem [4] [0])"), euclid_sig(), 10);
  EXPECT_EQ(r.status, ReduceStatus::Undefined);
  ASSERT_TRUE(r.undefined_at.has_value());
  EXPECT_EQ(*r.undefined_at, Address{Step::Arg});
}

// ---- delta semantics ----

namespace {
Value ent(std::uint64_t a, std::uint64_t b, const DeltaType& ty) {
  return Value::tuple({Value::nat(a), Value::nat(b)}, ty.entry_sort());
}
}  // namespace

TEST(DeltaSemantics, Functional) {
  DeltaType ty{{"Nat"}, "Nat"};
  Value ok = Value::seq({ent(1, 5, ty), ent(2, 6, ty)}, ty.list_sort());
  Value bad = Value::seq({ent(1, 5, ty), ent(1, 6, ty)}, ty.list_sort());
  Value dup = Value::seq({ent(1, 5, ty), ent(1, 5, ty)}, ty.list_sort());
  std::vector<Value> a{ok};
  EXPECT_EQ(*delta_semantics(DeltaOp::F, ty, a), Value::boolean(true));
  a = {bad};
  EXPECT_EQ(*delta_semantics(DeltaOp::F, ty, a), Value::boolean(false));
  a = {dup};
  EXPECT_EQ(*delta_semantics(DeltaOp::F, ty, a), Value::boolean(true));
}

TEST(DeltaSemantics, PrefixAndValue) {
  DeltaType ty{{"Nat"}, "Nat"};
  Value s = Value::seq({ent(1, 5, ty)}, ty.list_sort());
  std::vector<Value> a{s, Value::nat(2)};
  EXPECT_EQ(*delta_semantics(DeltaOp::B, ty, a), Value::boolean(false));
  EXPECT_FALSE(delta_semantics(DeltaOp::V, ty, a).has_value());
  a = {s, Value::nat(1)};
  EXPECT_EQ(*delta_semantics(DeltaOp::V, ty, a), Value::nat(5));
  Value bad = Value::seq({ent(1, 5, ty), ent(1, 6, ty)}, ty.list_sort());
  a = {bad, Value::nat(1)};
  EXPECT_FALSE(delta_semantics(DeltaOp::V, ty, a).has_value());
}

TEST(DeltaSemantics, DeleteAllOccurrences) {
  DeltaType ty{{"Nat"}, "Nat"};
  Value s = Value::seq({ent(1, 5, ty), ent(1, 5, ty), ent(2, 6, ty)}, ty.list_sort());
  std::vector<Value> a{s, ent(1, 5, ty)};
  EXPECT_EQ(*delta_semantics(DeltaOp::Del, ty, a), Value::seq({ent(2, 6, ty)}, ty.list_sort()));
}

TEST(DeltaSemantics, LookupLaw) {
  DeltaType ty{{"Nat"}, "Nat"};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    // Random functional list over keys 0..5.
    std::vector<Value> es;
    for (std::uint64_t k = 0; k < 6; ++k) {
      if (rng() % 2) es.push_back(ent(k, rng() % 9, ty));
    }
    Value sigma = Value::seq(es, ty.list_sort());
    std::uint64_t key = rng() % 6;
    Value v = Value::nat(rng() % 9);
    std::vector<Value> kept;
    for (const auto& e : es) {
      if (e.items()[0] != Value::nat(key)) kept.push_back(e);
    }
    std::vector<Value> add_args{Value::seq(kept, ty.list_sort()),
                                Value::tuple({Value::nat(key), v}, ty.entry_sort())};
    Value added = *delta_semantics(DeltaOp::Add, ty, add_args);
    std::vector<Value> look{added, Value::nat(key)};
    EXPECT_EQ(*delta_semantics(DeltaOp::V, ty, look), v);
  }
}

// ---- confluence ----

TEST(Confluence, Examples) {
  EXPECT_TRUE(check_confluence_bounded(P("(\\x. x) ((\\y. y) z)"), 3).confluent);
  EXPECT_TRUE(check_confluence_bounded(P("\\x. x"), 3).confluent);
  auto r = check_confluence_bounded(P("(\\z. z M N) (\\x y. y)"), 6);
  EXPECT_TRUE(r.confluent);
  ASSERT_EQ(r.normal_forms.size(), 1u);
  EXPECT_EQ(r.normal_forms[0], P("N"));
}

TEST(Confluence, WithFRedexes) {
  auto sig = euclid_sig();
  auto r = check_confluence_bounded(P("(\\x. #and x (#not [False])) (#lt [1] [2])"), 8, &sig);
  EXPECT_TRUE(r.confluent);
  ASSERT_EQ(r.normal_forms.size(), 1u);
  EXPECT_EQ(r.normal_forms[0], P("[True]"));
}

TEST(Commutation, BetaThenFMatchesFThenBeta) {
  auto sig = euclid_sig();
  for (const char* s : {"(\\x. x x) (#not [True])", "(\\x. y) (#and [True] [True])",
                        "(\\x. #not x) [True] (#not [False])"}) {
    Term t = P(s);
    for (const auto& b : beta_redexes(t)) {
      for (const auto& f : f_redexes(t, sig)) {
        Term bf = beta_step(t, b);
        Term fb = f_step(t, f, sig);
        // Both sides reach a common term in a bounded number of steps.
        auto rb = reduce_leftmost_f(bf, sig, 20);
        auto rf = reduce_leftmost_f(fb, sig, 20);
        EXPECT_EQ(rb.term, rf.term) << s;
      }
    }
  }
}

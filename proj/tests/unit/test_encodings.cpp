#include <gtest/gtest.h>

#include "asmlc/encodings.hpp"
#include "asmlc/lambda/parse.hpp"
#include "asmlc/lambda/reduce.hpp"

using namespace asmlc;
using namespace asmlc::enc;
using lambda::parse_term;
using lambda::reduce_leftmost;

namespace {
Term nf(const Term& t) {
  auto r = reduce_leftmost(t, 10000);
  EXPECT_EQ(r.status, lambda::ReduceStatus::Normal);
  return r.term;
}
}  // namespace

TEST(Catalog, ClosedAndNormal) {
  std::vector<Term> all{identity(), true_term(), false_term(), neg(), and_term(), or_term(),
                        implies_term(), iff_term(), zero_test(), succ(), pred(), nat(0), nat(3)};
  for (int k = 1; k <= 4; ++k) {
    for (int i = 1; i <= k; ++i) all.push_back(projection(k, i));
  }
  for (int n = 1; n <= 6; ++n) all.push_back(case_n(n));
  for (const auto& t : all) {
    EXPECT_TRUE(t.closed()) << t.to_string();
    EXPECT_TRUE(lambda::is_beta_normal(t)) << t.to_string();
  }
}

TEST(Catalog, TupleOfNormalIsNormal) {
  Term t = tuple({parse_term("z"), parse_term("\\a. a"), parse_term("y z")});
  EXPECT_TRUE(lambda::is_beta_normal(t));
  // The tuple binder avoids the items' free variables.
  EXPECT_EQ(nf(Term::app(t, projection(3, 1))), parse_term("z"));
}

TEST(Booleans, TruthTables) {
  for (bool a : {false, true}) {
    EXPECT_EQ(nf(Term::app(neg(), boolean(a))), boolean(!a));
    for (bool b : {false, true}) {
      auto bin = [&](const Term& op) { return nf(Term::apps(op, {boolean(a), boolean(b)})); };
      EXPECT_EQ(bin(and_term()), boolean(a && b));
      EXPECT_EQ(bin(or_term()), boolean(a || b));
      EXPECT_EQ(bin(implies_term()), boolean(!a || b));
      EXPECT_EQ(bin(iff_term()), boolean(a == b));
    }
  }
}

TEST(Booleans, IfThenElse) {
  Term m = parse_term("m");
  Term n = parse_term("n");
  EXPECT_EQ(nf(Term::app(if_then_else(m, n), true_term())), m);
  EXPECT_EQ(nf(Term::app(if_then_else(m, n), false_term())), n);
}

TEST(Naturals, ZeroSuccPred) {
  auto zero_cost = measure("zero", {}, Term::app(zero_test(), nat(0)));
  EXPECT_EQ(zero_cost.result, true_term());
  for (std::uint64_t n = 0; n <= 50; ++n) {
    auto z = measure("zero", {}, Term::app(zero_test(), nat(n + 1)));
    EXPECT_EQ(z.result, false_term());
    EXPECT_EQ(z.beta, zero_cost.beta) << "Zero must cost the same on 0 and n+1";
    EXPECT_EQ(nf(Term::app(succ(), nat(n))), nat(n + 1));
    EXPECT_EQ(nf(Term::app(pred(), nat(n + 1))), nat(n));
  }
}

TEST(Naturals, TwoIsNestedFalsePairs) {
  EXPECT_EQ(nat(2), parse_term("\\z. z (\\x y. y) (\\z. z (\\x y. y) (\\z. z (\\x y. x) (\\x y. y)))"));
}

TEST(Projection, CostIsOnePlusK) {
  for (int k = 1; k <= 5; ++k) {
    for (int i = 1; i <= k; ++i) {
      auto c = projection_cost(k, i);
      EXPECT_EQ(c.beta, static_cast<std::uint64_t>(1 + k));
      EXPECT_EQ(c.params.at("unique"), 1);
    }
  }
}

TEST(CaseN, SelectsFirstTrue) {
  Term m = parse_term("m");
  EXPECT_EQ(nf(Term::apps(case_n(1), {m, true_term()})), m);
  Term m1 = parse_term("m1");
  Term m2 = parse_term("m2");
  EXPECT_EQ(nf(Term::apps(case_n(2), {m1, m2, false_term(), true_term()})), m2);
  EXPECT_EQ(nf(Term::apps(case_n(2), {m1, m2, true_term(), false_term()})), m1);
}

TEST(CaseN, BranchCostIndependent) {
  for (int n = 1; n <= 6; ++n) {
    auto first = case_cost(n, 1);
    for (int i = 2; i <= n; ++i) {
      auto c = case_cost(n, i);
      EXPECT_EQ(c.beta, first.beta) << "n=" << n << " i=" << i;
      EXPECT_EQ(c.f, first.f);
    }
    EXPECT_EQ(first.beta, static_cast<std::uint64_t>(4 * n + 1));
  }
}

TEST(Scott, GeneratorIsProjection) {
  DatatypeDef d;
  d.sorts["T"] = {{"A", {}}, {"B", {}}, {"C", {}}};
  EXPECT_EQ(encode_value(d, Value::ctor("T", "B", 1, 3)), parse_term("\\a b c. b"));
  EXPECT_EQ(encode_value(d, Value::boolean(true)), true_term());
  EXPECT_THROW(encode_value(d, Value::ctor("U", "B", 1, 3)), Error);
  EXPECT_THROW(encode_value(d, Value::ctor("T", "Z", 1, 3)), Error);
}

TEST(Scott, RoundTrip) {
  DatatypeDef d;
  d.sorts["Tree"] = {{"Leaf", {}}, {"Node", {"Tree", "Nat", "Tree"}}};
  Value leaf = Value::ctor("Tree", "Leaf", 0, 2);
  Value t = Value::ctor("Tree", "Node", 1, 2, {leaf, Value::nat(2), Value::ctor("Tree", "Node", 1, 2, {leaf, Value::nat(0), leaf})});
  Term code = encode_value(d, t);
  EXPECT_TRUE(code.closed());
  EXPECT_TRUE(lambda::is_beta_normal(code));
  EXPECT_EQ(decode_value(d, code, "Tree"), t);
  Value s = Value::seq({Value::nat(1), Value::nat(4)}, "Seq:Nat");
  EXPECT_EQ(decode_value(d, encode_value(d, s), "Seq:Nat"), s);
  Value tup = Value::tuple({Value::boolean(false), Value::nat(3)});
  EXPECT_EQ(decode_value(d, encode_value(d, tup), "Tuple:Bool,Nat"), tup);
}

TEST(Scott, CodeHeadMatchesFullEncoding) {
  // Applying a code to selectors behaves like its Scott term.
  DatatypeDef d;
  for (std::uint64_t n : {0u, 1u, 5u}) {
    Term sel = parse_term("\\s. s");
    Term lhs = nf(Term::apps(Term::code(Value::nat(n)), {parse_term("zero"), sel}));
    Term rhs = nf(Term::apps(encode_value(d, Value::nat(n)), {parse_term("zero"), sel}));
    if (n == 0) {
      EXPECT_EQ(lhs, rhs);
    } else {
      EXPECT_EQ(lhs, Term::code(Value::nat(n - 1)));
      EXPECT_EQ(rhs, encode_value(d, Value::nat(n - 1)));
    }
  }
}

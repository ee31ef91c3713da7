#include <gtest/gtest.h>

#include "asmlc/lambda/parse.hpp"
#include "asmlc/lambda/term.hpp"

using namespace asmlc;
using namespace asmlc::lambda;

namespace {
Term P(const char* s) { return parse_term(s); }
}  // namespace

TEST(Substitute, DirectHit) {
  EXPECT_EQ(substitute(P("x"), "x", P("\\y. y")), P("\\y. y"));
}

TEST(Substitute, BoundOccurrenceUntouched) {
  Term t = P("\\x. x");
  EXPECT_TRUE(substitute(t, "x", P("z")).identical(t));
}

TEST(Substitute, AvoidsCapture) {
  Term r = substitute(P("\\y. x y"), "x", P("y"));
  EXPECT_EQ(r.to_string(), "\\y'. y y'");
  EXPECT_EQ(r, P("\\w. y w"));
  EXPECT_NE(r, P("\\y. y y"));
}

TEST(Alpha, RenamingInvariant) {
  EXPECT_EQ(P("\\x y. x (\\z. z y)"), P("\\a b. a (\\c. c b)"));
  EXPECT_NE(P("\\x y. x"), P("\\x y. y"));
  EXPECT_NE(P("\\x. y"), P("\\x. z"));
  EXPECT_EQ(P("\\x y. x").canonical(), P("\\p q. p").canonical());
}

TEST(Alpha, CodesCompareByValue) {
  EXPECT_EQ(P("[12]"), Term::code(Value::nat(12)));
  EXPECT_NE(P("[12]"), P("[13]"));
  EXPECT_TRUE(P("[True] x").has_free("x"));
}

TEST(Parse, RoundTripsPrinter) {
  for (const char* s : {"\\x. x", "(\\x. x x) (\\x. x x)", "#rem [12] [8]", "f (g x) (\\y. y)",
                        "\\z. z [True] [(1, 5)]", "a b c", "a (b c)", "(\\x. x) \\y. y"}) {
    Term t = P(s);
    EXPECT_EQ(P(t.to_string().c_str()), t) << s;
    EXPECT_EQ(P(t.to_string().c_str()).to_string(), t.to_string()) << s;
  }
}

TEST(Parse, ApplicationLeftAssociative) {
  Term t = P("a b c");
  ASSERT_TRUE(t.is_app());
  EXPECT_EQ(t.fun(), P("a b"));
  EXPECT_EQ(t.spine_args().size(), 2u);
}

TEST(Parse, RejectsGarbage) {
  EXPECT_THROW(P("\\. x"), ParseError);
  EXPECT_THROW(P("(x"), ParseError);
  EXPECT_THROW(P("x )"), ParseError);
}

TEST(Address, SubtermAndReplace) {
  Term t = P("(\\x. x) ((\\y. y) z)");
  Address a{Step::Arg, Step::Fun};
  EXPECT_EQ(subterm(t, a), P("\\y. y"));
  EXPECT_EQ(replace_at(t, a, P("w")), P("(\\x. x) (w z)"));
  EXPECT_THROW(subterm(t, {Step::Body}), Error);
  EXPECT_EQ(address_to_string(a), "arg.fun");
}

TEST(ScottHead, SelectsConstructor) {
  EXPECT_EQ(scott_head(Value::boolean(true)), P("\\a b. a"));
  EXPECT_EQ(scott_head(Value::nat(0)), P("\\a b. a"));
  EXPECT_EQ(scott_head(Value::nat(3)), P("\\a b. b [2]"));
}

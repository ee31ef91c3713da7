#include <gtest/gtest.h>

#include "asmlc/normalize.hpp"
#include "corpus.hpp"
#include "random_programs.hpp"

using namespace asmlc;
using namespace asmlc::testing;

namespace {

Expr E(std::string name, std::vector<Expr> args = {}) { return Expr::apply(std::move(name), std::move(args)); }

std::vector<State> euclid_states(const Machine& m, std::uint64_t n) {
  std::vector<State> out;
  for (std::uint64_t a = 1; a <= n; ++a) {
    for (std::uint64_t b = 1; b <= n; ++b) out.push_back(initial_state(m, euclid_inputs(a, b)));
  }
  return out;
}

}  // namespace

TEST(Normalize, EuclidIsOneClause) {
  Machine m = load_example("euclid.asm");
  GuardedProgram g = normalize(m.program);
  ASSERT_EQ(g.clauses.size(), 1u);
  EXPECT_EQ(g.clauses[0].guard.to_string(), "T(lt(zero, b))");
  ASSERT_EQ(g.clauses[0].instrs.size(), 2u);
  EXPECT_TRUE(check_equivalence(m, g, euclid_states(m, 20)));
}

TEST(Normalize, IfSplitsInTwo) {
  Program u = Program::assign("c", {}, E("zero"));
  Program v = Program::assign("c", {}, E("one"));
  GuardedProgram g = normalize(Program::if_(E("lt", {E("c"), E("d")}), u, v));
  ASSERT_EQ(g.clauses.size(), 2u);
  EXPECT_EQ(g.clauses[0].guard.to_string(), "T(lt(c, d))");
  EXPECT_EQ(g.clauses[1].guard.to_string(), "F(lt(c, d))");
}

TEST(Normalize, SameGuardsMerge) {
  Expr c = E("lt", {E("c"), E("d")});
  Program u = Program::assign("c", {}, E("zero"));
  Program w = Program::assign("d", {}, E("one"));
  GuardedProgram g = normalize(Program::par({Program::if_(c, u), Program::if_(c, w)}));
  ASSERT_EQ(g.clauses.size(), 1u);
  EXPECT_EQ(g.clauses[0].guard.to_string(), "T(lt(c, d))");
  EXPECT_EQ(g.clauses[0].instrs.size(), 2u);
}

TEST(Normalize, PrintsGuardedForm) {
  Machine m = load_example("euclid.asm");
  EXPECT_EQ(normalize(m.program).to_string(), "guarded {\n  when T(lt(zero, b)) do { a := b; b := rem(a, b) }\n}");
}

TEST(Normalize, RandomProgramsEquivalentAndExclusive) {
  Machine base = random_base();
  ProgramGen gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    Machine m = base;
    m.program = gen.program(4);
    GuardedProgram g = normalize(m.program);
    for (int k = 0; k < 10; ++k) {
      State s = initial_state(m, gen.inputs());
      ASSERT_LE(g.true_guards(m.vocab, s), 1u) << g.to_string();
      RunResult a = run(m, s, 30);
      RunResult b = run_guarded(m, g, s, 30);
      ASSERT_TRUE(same_run(a, b)) << print_program(m.program) << "\n" << g.to_string();
      for (const auto& st : a.trajectory) EXPECT_LE(g.true_guards(m.vocab, st), 1u);
    }
  }
}

TEST(Normalize, IdempotentUpToSimplification) {
  Machine base = random_base();
  ProgramGen gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    Machine m = base;
    m.program = gen.program(3);
    GuardedProgram g = normalize(m.program);
    GuardedProgram g2 = normalize(g);
    std::vector<State> states;
    for (int k = 0; k < 5; ++k) states.push_back(initial_state(m, gen.inputs()));
    for (const auto& s : states) EXPECT_TRUE(same_run(run_guarded(m, g, s, 30), run_guarded(m, g2, s, 30)));
  }
}

TEST(Normalize, PerturbedGuardDetected) {
  Machine m = load_example("euclid.asm");
  GuardedProgram g = normalize(m.program);
  g.clauses[0].guard = Guard::is(E("lt", {E("b"), E("a")}), true);
  EXPECT_FALSE(check_equivalence(m, g, euclid_states(m, 6)));
}

TEST(Simplify, DetectsContradictions) {
  Expr c = E("lt", {E("c"), E("d")});
  EXPECT_FALSE(simplify(Guard::conj({Guard::is(c, true), Guard::is(c, false)})).has_value());
  EXPECT_FALSE(simplify(Guard::conj({Guard::is(c, true), Guard::negate(Guard::is(c, true))})).has_value());
  EXPECT_EQ(simplify(Guard::negate(Guard::negate(Guard::is(c, true))))->to_string(), "T(lt(c, d))");
  // !T(c) is not F(c): both fail when c is undefined.
  EXPECT_TRUE(simplify(Guard::conj({Guard::negate(Guard::is(c, true)), Guard::negate(Guard::is(c, false))})));
}

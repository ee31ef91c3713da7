#include <gtest/gtest.h>

#include <random>

#include "asmlc/machine.hpp"
#include "asmlc/source.hpp"
#include "corpus.hpp"

using namespace asmlc;
using namespace asmlc::testing;

namespace {

Expr E(std::string name, std::vector<Expr> args = {}) { return Expr::apply(std::move(name), std::move(args)); }

State euclid_state(std::uint64_t a, std::uint64_t b) {
  State s;
  s.inputs = {{"a0", Value::nat(a)}, {"b0", Value::nat(b)}};
  s.dynamic["a"][{}] = Value::nat(a);
  s.dynamic["b"][{}] = Value::nat(b);
  return s;
}

std::uint64_t dyn(const State& s, const std::string& n) { return s.dynamic.at(n).at({}).as_nat(); }

}  // namespace

TEST(Vocabulary, BooleanFragmentPresent) {
  Vocabulary v;
  for (const char* n : {"True", "False", "not", "and", "or", "eq_Bool", "ite_Bool"}) {
    ASSERT_NE(v.find_symbol(n), nullptr) << n;
    EXPECT_TRUE(v.symbol(n).is_static());
  }
  EXPECT_THROW(v.add_sort({"Bool", {}}), SortError);
}

TEST(Vocabulary, InputsAreStaticConstants) {
  Vocabulary v;
  v.add_sort({"S", {Value::nat(0, "S")}});
  Symbol s;
  s.name = "d";
  s.kind = SymbolKind::Dynamic;
  s.result_sort = "S";
  s.input = true;
  EXPECT_THROW(v.add_symbol(s), SortError);
}

TEST(EvalGround, Euclid) {
  Machine m = load_example("euclid.asm");
  State s = euclid_state(12, 8);
  EXPECT_EQ(*eval_ground(m.vocab, s, E("rem", {E("a"), E("b")})), Value::nat(4));
  EXPECT_EQ(*eval_ground(m.vocab, s, E("True")), Value::boolean(true));
  EXPECT_FALSE(eval_ground(m.vocab, euclid_state(12, 0), E("rem", {E("a"), E("b")})).has_value());
}

TEST(LiftInterpretation, Examples) {
  Machine m = load_example("euclid.asm");
  State s = euclid_state(1, 1);
  auto proj = lift_interpretation(m.vocab, s, Expr::var("x1", 0), {1}, {"Nat", "Nat"}, {"Nat"});
  std::vector<Value> args{Value::nat(3), Value::nat(9)};
  EXPECT_EQ(*proj(args), Value::nat(9));
  auto rem = lift_interpretation(m.vocab, s, E("rem", {Expr::var("x1", 0), Expr::var("x2", 1)}), {0, 1},
                                 {"Nat", "Nat"}, {"Nat", "Nat"});
  args = {Value::nat(12), Value::nat(8)};
  EXPECT_EQ(*rem(args), Value::nat(4));
  auto self = lift_interpretation(m.vocab, s, E("rem", {Expr::var("x1", 0), Expr::var("x1", 0)}), {0}, {"Nat"},
                                  {"Nat"});
  for (std::uint64_t a = 1; a < 20; ++a) {
    std::vector<Value> one{Value::nat(a)};
    EXPECT_EQ(*self(one), Value::nat(0));
  }
  EXPECT_THROW(lift_interpretation(m.vocab, s, Expr::var("x1", 0), {0}, {"Bool"}, {"Nat"}), SortError);
}

TEST(ActiveUpdates, Euclid) {
  Machine m = load_example("euclid.asm");
  auto ups = active_updates(m.vocab, euclid_state(12, 8), m.program);
  ASSERT_EQ(ups.size(), 2u);
  EXPECT_EQ(ups[0].to_string(), "a := b");
  EXPECT_EQ(ups[1].to_string(), "b := rem(a, b)");
  EXPECT_TRUE(active_updates(m.vocab, euclid_state(4, 0), m.program).empty());
}

TEST(ActiveUpdates, UndefinedConditionGivesNothing) {
  Machine m = load_example("euclid.asm");
  Program p = Program::if_(E("eq_Nat", {E("rem", {E("a"), E("b")}), E("zero")}), Program::assign("a", {}, E("b")),
                           Program::assign("a", {}, E("zero")));
  EXPECT_TRUE(active_updates(m.vocab, euclid_state(4, 0), p).empty());
  auto hf = halts_or_fails(m.vocab, euclid_state(4, 0), Program::if_(p.cond, Program::halt(), Program::fail()));
  EXPECT_FALSE(hf.halts);
  EXPECT_FALSE(hf.fails);
}

TEST(DetectClash, Examples) {
  auto up = [](std::string s, std::uint64_t v) { return ActiveUpdate{std::move(s), {}, Value::nat(v)}; };
  EXPECT_TRUE(detect_clash({up("c", 1), up("c", 2)}).has_value());
  EXPECT_FALSE(detect_clash({up("c", 1), up("c", 1)}).has_value());
  EXPECT_FALSE(detect_clash({up("c", 1), up("d", 2)}).has_value());
}

TEST(DetectClash, OrderIndependent) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ActiveUpdate> ups;
    for (int i = 0; i < 5; ++i) {
      ups.push_back({rng() % 2 ? "f" : "g", {Value::nat(rng() % 2)}, Value::nat(rng() % 3)});
    }
    auto a = detect_clash(ups);
    std::shuffle(ups.begin(), ups.end(), rng);
    auto b = detect_clash(ups);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(a->first, b->first);
      EXPECT_EQ(a->second, b->second);
    }
  }
}

TEST(HaltsOrFails, Examples) {
  Vocabulary v;
  State s;
  auto hf = halts_or_fails(v, s, Program::par({Program::halt(), Program::skip()}));
  EXPECT_TRUE(hf.halts);
  EXPECT_FALSE(hf.fails);
  hf = halts_or_fails(v, s, Program::par({Program::halt(), Program::fail()}));
  EXPECT_FALSE(hf.halts);
  EXPECT_TRUE(hf.fails);
  hf = halts_or_fails(v, s, Program::if_(E("False"), Program::halt(), Program::skip()));
  EXPECT_FALSE(hf.halts);
  EXPECT_FALSE(hf.fails);
}

TEST(Successor, EuclidReadsOldValues) {
  Machine m = load_example("euclid.asm");
  auto o = successor(m, euclid_state(12, 8));
  ASSERT_EQ(o.kind, StepOutcome::Kind::Continue);
  EXPECT_EQ(dyn(o.next, "a"), 8u);
  EXPECT_EQ(dyn(o.next, "b"), 4u);
  auto h = successor(m, euclid_state(4, 0));
  ASSERT_EQ(h.kind, StepOutcome::Kind::ImplicitHalt);
  EXPECT_EQ(single_output(h.outputs, "a"), Value::nat(4));
}

TEST(Successor, FailAndUndefined) {
  Machine m = load_example("fail.asm");
  auto o = successor(m, initial_state(m, {}));
  EXPECT_EQ(o.kind, StepOutcome::Kind::Fail);
  EXPECT_EQ(o.reason, FailReason::Explicit);
  Machine e = load_example("euclid.asm");
  e.program = Program::assign("a", {}, E("rem", {E("a"), E("b")}));
  auto u = successor(e, euclid_state(3, 0));
  EXPECT_EQ(u.kind, StepOutcome::Kind::Fail);
  EXPECT_EQ(u.reason, FailReason::Undefined);
}

TEST(Successor, FrameProperty) {
  Machine m = load_example("doubling.asm");
  State s = initial_state(m, {});
  auto o = successor(m, s);
  ASSERT_EQ(o.kind, StepOutcome::Kind::Continue);
  EXPECT_EQ(o.next.inputs, s.inputs);
  for (const auto& [k, v] : s.dynamic.at("f")) {
    if (k == Tuple{Value::nat(0)}) continue;
    EXPECT_EQ(o.next.dynamic.at("f").at(k), v);
  }
}

TEST(Run, EuclidTrajectory) {
  Machine m = load_example("euclid.asm");
  auto r = run(m, initial_state(m, euclid_inputs(12, 8)), 100);
  ASSERT_TRUE(r.success());
  EXPECT_EQ(r.steps, 2u);
  ASSERT_EQ(r.trajectory.size(), 3u);
  EXPECT_EQ(dyn(r.trajectory[1], "a"), 8u);
  EXPECT_EQ(dyn(r.trajectory[2], "b"), 0u);
  EXPECT_EQ(single_output(r.outputs, "a"), Value::nat(4));
  auto z = run(m, initial_state(m, euclid_inputs(7, 0)), 100);
  EXPECT_EQ(z.steps, 0u);
  EXPECT_EQ(single_output(z.outputs, "a"), Value::nat(7));
}

TEST(Run, GcdMatchesBruteForce) {
  Machine m = load_example("euclid.asm");
  for (std::uint64_t a = 1; a <= 50; ++a) {
    for (std::uint64_t b = 1; b <= 50; ++b) {
      auto r = run(m, initial_state(m, euclid_inputs(a, b)), 1000);
      ASSERT_TRUE(r.success());
      EXPECT_EQ(single_output(r.outputs, "a"), Value::nat(brute_gcd(a, b)));
    }
  }
}

TEST(Run, FixedPointDiverges) {
  Machine m = load_example("euclid.asm");
  m.program = Program::assign("a", {}, E("a"));
  auto r = run(m, initial_state(m, euclid_inputs(3, 3)), 25);
  EXPECT_EQ(r.outcome, RunResult::Outcome::Diverged);
  EXPECT_EQ(r.steps, 25u);
  EXPECT_EQ(r.trajectory.front(), r.trajectory.back());
}

TEST(Run, RejectsNonInitialState) {
  Machine m = load_example("euclid.asm");
  State s = initial_state(m, euclid_inputs(3, 3));
  s.dynamic["a"][{}] = Value::nat(5);
  EXPECT_THROW(run(m, s, 10), NotXiInitial);
}

TEST(Run, Deterministic) {
  Machine m = load_example("traffic.asm");
  auto a = run(m, initial_state(m, {}), 100);
  auto b = run(m, initial_state(m, {}), 100);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.outcome, RunResult::Outcome::HaltSuccess);
  // Red, Green, Amber cycles: five steps land on Amber.
  EXPECT_EQ(outputs_to_string(a.outputs), "light = Light.Amber, ticks = 5");
}

TEST(Run, DoublingFillsTable) {
  Machine m = load_example("doubling.asm");
  auto r = run(m, initial_state(m, {}), 100);
  ASSERT_EQ(r.outcome, RunResult::Outcome::HaltSuccess);
  const Table& f = r.outputs.at(0).second;
  for (std::uint64_t x = 0; x < 4; ++x) EXPECT_EQ(f.at({Value::nat(x)}), Value::nat(2 * x));
  EXPECT_EQ(f.at({Value::nat(7)}), Value::nat(0));
}

TEST(Trajectory, JsonRecord) {
  Machine m = load_example("euclid.asm");
  EXPECT_EQ(trajectory_record(m.vocab, 0, euclid_state(12, 8)), R"({"dynamic":{"a":"12","b":"8"},"step":0})");
}

// ---- source format ----

TEST(Source, RoundTripsCorpus) {
  for (const char* f : {"euclid.asm", "doubling.asm", "fail.asm", "clash.asm", "table_clash.asm", "traffic.asm"}) {
    Machine m = load_example(f);
    std::string text = print_machine(m);
    Machine back = parse_machine(text);
    EXPECT_TRUE(same_structure(m, back)) << f << "\n" << text;
    EXPECT_EQ(print_machine(back), text) << f;
  }
}

TEST(Source, Diagnostics) {
  const std::string head = "sort Nat = 0..3; static zero : Nat = 0; static one : Nat = 1; dynamic c : Nat;\n";
  auto diag = [&](const std::string& tail) {
    try {
      parse_machine(head + tail);
    } catch (const SourceError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(diag("init c = c; program skip;").find("only static"), std::string::npos);
  EXPECT_NE(diag("init c = zero; program zero := one;").find("dynamic symbol"), std::string::npos);
  EXPECT_NE(diag("init c = zero; program c := True;").find("assigns Bool"), std::string::npos);
  EXPECT_NE(diag("init c = zero; program c := nope;").find("unknown symbol"), std::string::npos);
  EXPECT_NE(diag("init c = zero; program if c then skip;").find("not Bool"), std::string::npos);
  EXPECT_NE(diag("program skip;").find("no init rule"), std::string::npos);
  EXPECT_NE(diag("init c = zero; program par { skip").find("2:"), std::string::npos);
  EXPECT_EQ(diag("init c = zero; program skip;"), "no error");
}

TEST(Source, TablesAndEnums) {
  Machine m = load_example("traffic.asm");
  const Symbol& next = m.vocab.symbol("next");
  EXPECT_TRUE(next.total);
  Value red = parse_literal(m.vocab, "Light", "Red");
  std::vector<Value> a{red};
  EXPECT_EQ(next.fn(a)->ctor_name(), "Green");
  EXPECT_THROW(parse_literal(m.vocab, "Light", "Blue"), SortError);
}

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "asmlc/machine.hpp"

namespace asmlc {

// Two-valued guard over possibly undefined Boolean terms. An atom holds when
// its term is defined and equals `want`; an undefined condition therefore
// makes both IsTrue(c) and IsFalse(c) false.
struct Guard {
  enum class Kind : std::uint8_t { True, Atom, Not, And };
  Kind kind = Kind::True;
  Expr term;
  bool want = true;
  std::vector<Guard> parts;  // Not: one part. And: conjuncts.

  static Guard truth();
  static Guard is(Expr c, bool want);
  static Guard negate(Guard g);
  static Guard conj(std::vector<Guard> gs);

  bool holds(const Vocabulary& vocab, const State& s) const;
  std::string to_string() const;
  friend bool operator==(const Guard&, const Guard&) = default;
};

// Flattens conjunctions, drops True conjuncts and double negations. Returns
// nullopt when the conjunction contains both IsTrue(c) and IsFalse(c), or a
// conjunct and its negation.
std::optional<Guard> simplify(const Guard& g);

struct Instr {
  enum class Kind : std::uint8_t { Update, Halt, Fail };
  Kind kind = Kind::Update;
  UpdateInstr update;

  friend bool operator==(const Instr&, const Instr&) = default;
};

struct Clause {
  Guard guard;
  std::vector<Instr> instrs;

  friend bool operator==(const Clause&, const Clause&) = default;
};

// A parallel block of guarded blocks. normalize() produces guards of which at
// most one holds in any state.
struct GuardedProgram {
  std::vector<Clause> clauses;

  StepView step(const Vocabulary& vocab, const State& s) const;
  std::size_t true_guards(const Vocabulary& vocab, const State& s) const;
  std::string to_string() const;
  friend bool operator==(const GuardedProgram&, const GuardedProgram&) = default;
};

GuardedProgram normalize(const Program& p);
// Re-simplifies guards and drops contradictory or empty clauses.
GuardedProgram normalize(const GuardedProgram& g);

RunResult run_guarded(const Machine& m, const GuardedProgram& g, const State& initial, std::size_t max_steps);

// Same trajectory and outcome (including outputs, fail reason and clash
// witness) from every sampled initial state.
bool check_equivalence(const Machine& m, const GuardedProgram& g, const std::vector<State>& initial_states,
                       std::size_t max_steps = 1000);

bool same_run(const RunResult& a, const RunResult& b);

}  // namespace asmlc

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asmlc/combinators.hpp"
#include "asmlc/lambda/delta.hpp"
#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/machine.hpp"
#include "asmlc/normalize.hpp"

namespace asmlc::compiler {

using lambda::FSignature;
using lambda::Term;

class CompileError : public Error {
 public:
  using Error::Error;
};

enum class Pathway : std::uint8_t { Type0, General };

// Slot order: dynamic symbols in declaration order, then the inputs the
// program or an init rule of a non-constant dynamic refers to.
struct Slot {
  enum class Kind : std::uint8_t { Value, Delta, Input };
  Kind kind = Kind::Value;
  std::string symbol;
  std::string variable;
  std::string sort;  // sort of the slot's codes
  std::optional<lambda::DeltaType> delta;
};

struct CompileOptions {
  std::optional<int> K;  // exact per-round counts; default minimum + headroom
  std::optional<int> L;
  int headroom_K = 0;
  int headroom_L = 0;
};

// Sort of the exit codes: fail = 2, clash = 3, success = <1, outputs...>.
inline constexpr const char* kExitSort = "Exit";

struct CompiledMachine {
  Machine machine;
  GuardedProgram program;
  Pathway pathway = Pathway::Type0;
  FSignature sig;  // statics, totalized partials, delta and exit constants
  std::vector<Slot> slots;
  std::vector<std::size_t> output_slots;  // exit tuple order
  std::vector<std::string> branch_labels;
  comb::CompiledCombinator comb;

  const Term& theta() const { return comb.theta; }
  int K() const { return comb.K; }
  int L() const { return comb.L; }
  std::size_t k() const { return slots.size(); }
};

// Throws CompileError when a dynamic symbol has nonzero arity. A program with
// no clauses compiles to an immediate implicit halt.
CompiledMachine compile_type0(const Machine& m, const CompileOptions& opts = {});
CompiledMachine compile_general(const Machine& m, const CompileOptions& opts = {});
// Type 0 when every dynamic symbol is a constant, general otherwise.
CompiledMachine compile(const Machine& m, const CompileOptions& opts = {});

// Slot codes of a xi-initial state. Delta slots start empty.
std::vector<Value> initial_slots(const CompiledMachine& cm, const State& s0);

Term start_term(const CompiledMachine& cm, const State& s0);

// Interpretation of slot j's symbol held in `code`: the value itself for a
// constant, the initial table of s0 overridden by the delta entries otherwise.
Table slot_table(const CompiledMachine& cm, std::size_t j, const Value& code, const State& s0);

struct Decoded {
  enum class Kind : std::uint8_t { Running, Success, Fail, Clash };
  Kind kind = Kind::Running;
  std::vector<Value> slots;    // Running
  std::vector<Value> outputs;  // Success, one per output slot
};

// Throws Error on a term that is neither a round boundary nor an exit code.
Decoded decode_result(const Term& t, const CompiledMachine& cm);

std::string decoded_kind_name(Decoded::Kind k);

// `key: value` lines describing slots, counts, exits and theta.
std::string manifest(const CompiledMachine& cm);

}  // namespace asmlc::compiler

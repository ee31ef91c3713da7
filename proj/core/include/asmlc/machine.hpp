#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/value.hpp"

namespace asmlc {

class SortError : public Error {
 public:
  using Error::Error;
};

// A finite, enumerated carrier.
struct Sort {
  std::string name;
  std::vector<Value> carrier;

  bool contains(const Value& v) const;
};

enum class SymbolKind : std::uint8_t { Static, Dynamic };

// Where a static symbol's semantics came from; the printer needs it.
struct StaticBinding {
  enum class Kind : std::uint8_t { Auto, Builtin, Literal, Table, Input };
  Kind kind = Kind::Auto;
  std::string builtin;
  Value literal;
  std::vector<std::pair<Tuple, Value>> table;
};

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Static;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  bool input = false;   // static constant bound per run
  bool output = false;  // dynamic, reported on halting
  StaticBinding binding;
  lambda::SemanticFn fn;  // non-input statics; nullopt = undefined
  bool total = true;      // fn defined on the whole carrier product

  std::size_t arity() const { return arg_sorts.size(); }
  bool is_static() const { return kind == SymbolKind::Static; }
  bool is_dynamic() const { return kind == SymbolKind::Dynamic; }
};

// Sorts and symbols in declaration order. Construction adds the Bool sort
// with True, False, not, and, or; every sort S gets eq_S and ite_S.
class Vocabulary {
 public:
  Vocabulary();

  void add_sort(Sort s);
  void add_symbol(Symbol s);

  const Sort* find_sort(const std::string& name) const;
  const Sort& sort(const std::string& name) const;
  const Symbol* find_symbol(const std::string& name) const;
  const Symbol& symbol(const std::string& name) const;

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::vector<const Symbol*> dynamics() const;
  std::vector<const Symbol*> inputs() const;
  std::vector<const Symbol*> outputs() const;

  // Every tuple of the carrier product for `arg_sorts`.
  std::vector<Tuple> tuples(const std::vector<std::string>& arg_sorts) const;

 private:
  std::vector<Sort> sorts_;
  std::vector<Symbol> symbols_;
  std::map<std::string, std::size_t> sort_index_;
  std::map<std::string, std::size_t> symbol_index_;
};

// Built-in static semantics over natural-number sorts: rem, lt, le, add,
// sub, mul, succ, pred. Results outside the result carrier are undefined.
Symbol builtin_symbol(const Vocabulary& vocab, std::string name, std::string builtin,
                      std::vector<std::string> arg_sorts, std::string result_sort);
Symbol literal_symbol(std::string name, const std::string& sort, Value v);
Symbol table_symbol(const Vocabulary& vocab, std::string name, std::vector<std::string> arg_sorts,
                    std::string result_sort, std::vector<std::pair<Tuple, Value>> table);

// Typed term over the vocabulary; Var nodes are parameters of init terms.
struct Expr {
  enum class Kind : std::uint8_t { Apply, Var };
  Kind kind = Kind::Apply;
  std::string name;
  std::vector<Expr> args;
  std::size_t index = 0;  // Var: parameter position

  static Expr apply(std::string name, std::vector<Expr> args = {});
  static Expr var(std::string name, std::size_t index);

  bool is_var() const { return kind == Kind::Var; }
  std::size_t size() const;
  std::string to_string() const;
  friend bool operator==(const Expr&, const Expr&) = default;
};

using TypedTerm = Expr;

// Sort of `e`; throws SortError on unknown symbols or profile mismatches.
std::string sort_of(const Vocabulary& vocab, const Expr& e,
                    const std::vector<std::string>& var_sorts = {});

// Init rule for a dynamic symbol alpha: alpha(x1..xl) = term, where term
// uses only static symbols and the parameters.
struct InitRule {
  std::vector<std::string> params;
  Expr term;

  friend bool operator==(const InitRule&, const InitRule&) = default;
};
using InitMap = std::map<std::string, InitRule>;

struct UpdateInstr {
  std::string symbol;
  std::vector<Expr> args;
  Expr rhs;

  std::string to_string() const;
  friend bool operator==(const UpdateInstr&, const UpdateInstr&) = default;
};

struct Program {
  enum class Kind : std::uint8_t { Skip, Halt, Fail, Update, If, Par };
  Kind kind = Kind::Skip;
  UpdateInstr update;
  Expr cond;
  std::vector<Program> children;  // If: then, else. Par: blocks.

  static Program skip();
  static Program halt();
  static Program fail();
  static Program assign(std::string symbol, std::vector<Expr> args, Expr rhs);
  static Program if_(Expr cond, Program then_p, Program else_p = skip());
  static Program par(std::vector<Program> blocks);

  std::size_t size() const;
  friend bool operator==(const Program&, const Program&) = default;
};

using Table = std::map<Tuple, Value>;  // missing key = undefined

struct State {
  std::map<std::string, Value> inputs;
  std::map<std::string, Table> dynamic;

  const Value* lookup(const std::string& symbol, const Tuple& args) const;
  friend bool operator==(const State&, const State&) = default;
};

struct Machine {
  std::string name;
  Vocabulary vocab;
  InitMap init;
  Program program;
};

// Checks update heads, sorts, and that init terms use statics only.
void validate(const Machine& m);

std::optional<Value> eval_term(const Vocabulary& vocab, const State& s, const Expr& e,
                               std::span<const Value> env = {});
inline std::optional<Value> eval_ground(const Vocabulary& vocab, const State& s, const Expr& e) {
  return eval_term(vocab, s, e, {});
}

using PartialFn = std::function<std::optional<Value>(std::span<const Value>)>;

// (a1..ap) -> t(a_sigma(1), ..., a_sigma(l)); sigma is 0-based. Throws
// SortError when var_sorts[j] != arg_sorts[sigma[j]].
PartialFn lift_interpretation(const Vocabulary& vocab, const State& s, const Expr& t,
                              const std::vector<std::size_t>& sigma,
                              const std::vector<std::string>& arg_sorts,
                              const std::vector<std::string>& var_sorts);

// The xi-initial state for the given input values.
State initial_state(const Machine& m, const std::map<std::string, Value>& inputs);

class NotXiInitial : public Error {
 public:
  using Error::Error;
};
void check_xi_initial(const Machine& m, const State& s);

std::vector<UpdateInstr> active_updates(const Vocabulary& vocab, const State& s, const Program& p);

struct ActiveUpdate {
  std::string symbol;
  Tuple args;
  Value value;

  std::string to_string() const;
  friend bool operator==(const ActiveUpdate&, const ActiveUpdate&) = default;
};

// nullopt when some argument or right-hand side is undefined.
std::optional<std::vector<ActiveUpdate>> evaluate_updates(const Vocabulary& vocab, const State& s,
                                                          const std::vector<UpdateInstr>& ups);

struct Clash {
  ActiveUpdate first;
  ActiveUpdate second;
};

std::optional<Clash> detect_clash(const std::vector<ActiveUpdate>& updates);

struct HaltFail {
  bool halts = false;
  bool fails = false;
};
HaltFail halts_or_fails(const Vocabulary& vocab, const State& s, const Program& p);

// What a program does in one state; programs and guarded programs both
// reduce to this.
struct StepView {
  std::vector<UpdateInstr> active;
  bool halts = false;
  bool fails = false;
};
StepView view(const Vocabulary& vocab, const State& s, const Program& p);

using Outputs = std::vector<std::pair<std::string, Table>>;

enum class FailReason : std::uint8_t { None, Explicit, Undefined };

struct StepOutcome {
  enum class Kind : std::uint8_t { Continue, HaltSuccess, ImplicitHalt, Fail, Clash };
  Kind kind = Kind::Continue;
  State next;
  Outputs outputs;
  FailReason reason = FailReason::None;
  std::optional<asmlc::Clash> clash;
};

Outputs outputs_of(const Vocabulary& vocab, const State& s);

StepOutcome successor(const Vocabulary& vocab, const State& s, const StepView& v);
inline StepOutcome successor(const Machine& m, const State& s) {
  return successor(m.vocab, s, view(m.vocab, s, m.program));
}

struct RunResult {
  enum class Outcome : std::uint8_t { HaltSuccess, ImplicitHalt, Fail, Clash, Diverged };
  Outcome outcome = Outcome::Diverged;
  std::vector<State> trajectory;  // S0 .. S_steps
  std::size_t steps = 0;          // successor transitions taken
  Outputs outputs;
  FailReason reason = FailReason::None;
  std::optional<asmlc::Clash> clash;

  bool success() const {
    return outcome == Outcome::HaltSuccess || outcome == Outcome::ImplicitHalt;
  }
};

using Stepper = std::function<StepView(const State&)>;

// Runs from `initial` (checked xi-initial) for at most max_steps transitions.
RunResult run(const Machine& m, const State& initial, std::size_t max_steps);
RunResult run_with(const Vocabulary& vocab, const Stepper& step, const State& initial,
                   std::size_t max_steps);

std::string outcome_name(RunResult::Outcome o);
std::string outputs_to_string(const Outputs& out);

// One JSON object per line: {"step": i, "dynamic": {...}}.
std::string trajectory_record(const Vocabulary& vocab, std::size_t step, const State& s);

}  // namespace asmlc

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/lambda/term.hpp"

namespace asmlc::comb {

using lambda::FSignature;
using lambda::Term;

// (\x. f (x x)) (\x. f (x x)); one leftmost step gives f applied to itself.
Term curry_fixpoint(const Term& f);

struct PadSpec {
  int K = 3;
  int L = 0;
  std::string omega = "not";      // unary, sort Bool -> Bool
  Value nu = Value::boolean(true);
  bool f_free = false;            // no F-redex in the built term; needs K >= 3
};

// pad M t1..tm reaches M t1..tm by exactly L F-steps and K beta-steps,
// provided M and the ti contain no F-redex. The plain variant does all F
// steps first; the F-free variant does one beta-step, then the F steps.
Term pad(const PadSpec& spec);

// One row of the case analysis. Guards are tried in order; the first true
// one selects the row.
struct Branch {
  Term guard;                 // good term of sort Bool
  bool exit = false;
  std::vector<Term> updates;  // one good term per slot, when !exit
  Term result;                // good term, when exit
};

struct CombinatorSpec {
  std::vector<std::string> slots;  // variable names x1..xk
  std::vector<Branch> branches;
  std::optional<int> K;  // requested per-round counts; default = minimum
  std::optional<int> L;
  // Slot valuations on which the minimum is measured. Empty: use the
  // structural count only.
  std::vector<std::vector<Value>> probes;
};

// theta [a1]..[ak] reduces to theta [b1]..[bk] (update row) or to the code
// of the exit value (exit row) in exactly K beta- and L F-steps.
struct CompiledCombinator {
  Term theta;
  int K = 0;
  int L = 0;
  int K_min = 0;
  int L_min = 0;
  std::size_t k = 0;
  std::size_t branch_count = 0;
  // Prepared row terms over the slot variables: guards, update components of
  // every update row, exit results.
  std::vector<Term> rho;
  std::vector<Term> phi;
  std::vector<Term> gamma;
};

// Throws Error when K or L is below the minimum, when a guard or update is not
// a good term, or when a probe measures differently from the construction.
CompiledCombinator build_conditional_combinator(const CombinatorSpec& spec, const FSignature& sig);

// The unconditional case: one update row.
CompiledCombinator build_update_combinator(const std::vector<std::string>& slots,
                                           const std::vector<Term>& updates, const FSignature& sig,
                                           std::optional<int> K = std::nullopt,
                                           std::optional<int> L = std::nullopt);

// theta [a1] .. [ak].
Term apply_slots(const Term& theta, const std::vector<Value>& slots);

// Slot codes of a round boundary theta [b1]..[bk], or nullopt.
std::optional<std::vector<Value>> match_round(const Term& t, const Term& theta, std::size_t k);

struct RoundCost {
  std::uint64_t beta = 0;
  std::uint64_t f = 0;
  Term result;
  bool exited = false;  // landed on a code instead of a theta-headed term
};

// Reduces leftmost F-first until the next round boundary or an exit code.
// Throws Error when neither is reached within `budget` steps.
RoundCost measure_round(const Term& start, const Term& theta, std::size_t k, const FSignature& sig,
                        std::uint64_t budget = 100000);

}  // namespace asmlc::comb

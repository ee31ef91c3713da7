#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/lambda/term.hpp"
#include "asmlc/machine.hpp"

namespace asmlc::good {

using lambda::FSignature;
using lambda::Term;

class NotTypeZero : public Error {
 public:
  using Error::Error;
};

// F-signature of the vocabulary's static, non-input symbols.
FSignature signature_of(const Vocabulary& vocab);

// Variable standing for dynamic constant `name` in compiled terms.
std::string slot_variable(const std::string& name);

struct Translation {
  // Dynamic constants default to slot_variable; inputs must be listed.
  std::map<std::string, Term> dynamic_constants;
  std::vector<Term> params;                       // for Var nodes
};

// Static symbols become constants, dynamic constants become variables.
// Throws NotTypeZero on a dynamic symbol of nonzero arity.
Term from_asm_term(const Vocabulary& vocab, const Expr& e, const Translation& tr = {});

// Abstraction-free tree of saturated constant applications over variables
// and codes.
bool is_good(const Term& t, const FSignature& sig);

// Number of constant occurrences: the F-cost of a good term whose leaves are
// all codes.
std::size_t const_nodes(const Term& t);

using Valuation = std::map<std::string, Value>;

Term instantiate(const Term& t, const Valuation& val);

// Direct semantics; nullopt when some static function is undefined.
std::optional<Value> denote(const Term& t, const FSignature& sig, const Valuation& val);

struct Cost {
  Value value;
  std::uint64_t f_count = 0;
  std::uint64_t beta_count = 0;
};

// Leftmost F-first reduction of t[codes/variables]. nullopt when the
// reduction hits an undefined application.
std::optional<Cost> reduce_cost(const Term& t, const FSignature& sig, const Valuation& val);

// Replaces every closed subterm with a defined value by its code, so the
// result contains no F-redex.
Term fold(const Term& t, const FSignature& sig);

}  // namespace asmlc::good

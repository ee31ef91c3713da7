#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asmlc/lambda/reduce.hpp"
#include "asmlc/lambda/term.hpp"
#include "asmlc/value.hpp"

namespace asmlc::lambda {

using SemanticFn = std::function<std::optional<Value>(std::span<const Value>)>;

// A benign constant c_f: fires only on codes of the declared sorts.
struct FFunction {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  SemanticFn fn;  // nullopt = undefined at these arguments
  bool total = true;

  std::size_t arity() const { return arg_sorts.size(); }
};

class FSignature {
 public:
  // Throws Error on a duplicate name.
  void add(FFunction f);
  // Replaces or inserts.
  void put(FFunction f);
  const FFunction* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const std::map<std::string, FFunction>& functions() const { return fns_; }

  // True, False, not, and, or, implies, iff over Bool.
  static FSignature booleans();

 private:
  std::map<std::string, FFunction> fns_;
};

class UndefinedApplication : public Error {
 public:
  using Error::Error;
};

bool is_f_redex(const Term& t, const FSignature& sig);

// Every F-redex of `t`, in prefix order. Distinct F-redexes are disjoint.
std::vector<Address> f_redexes(const Term& t, const FSignature& sig);

std::optional<Address> leftmost_f_redex(const Term& t, const FSignature& sig);

// Replace the F-redex at `at` by the code of its value. Throws NotARedex, or
// UndefinedApplication when the semantic function has no value there.
Term f_step(const Term& t, const Address& at, const FSignature& sig);

// Leftmost strategy of the extended calculus: the leftmost F-redex if there
// is one anywhere in the term, otherwise the leftmost beta-redex.
ReduceResult reduce_leftmost_f(const Term& t, const FSignature& sig, std::uint64_t max_steps,
                               TraceMode mode = TraceMode::Full);

bool is_normal(const Term& t, const FSignature& sig);

}  // namespace asmlc::lambda

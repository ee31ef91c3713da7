#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/value.hpp"

namespace asmlc::lambda {

// Profile (A_i1, ..., A_im) -> A_i of a dynamic symbol. Delta lists of this
// profile are sequences of (m+1)-tuples.
struct DeltaType {
  std::vector<std::string> arg_sorts;
  std::string result_sort;

  std::size_t arity() const { return arg_sorts.size(); }
  // Name suffix shared by the constants of this profile, e.g. `Nat_Nat`.
  std::string tag() const;
  std::string list_sort() const { return "Delta_" + tag(); }
  std::string entry_sort() const { return "Entry_" + tag(); }

  std::string name(std::string_view op) const { return std::string(op) + "_" + tag(); }
};

enum class DeltaOp { F, B, V, Add, Del, Tup };

// Argument layout:
//   F(list)            functional in the first m components
//   B(list, a1..am)    some entry extends a1..am
//   V(list, a1..am)    last component of the unique extension; undefined
//                      unless F and B hold
//   Add(list, entry)   append
//   Del(list, entry)   remove every occurrence of entry
//   Tup(a1..am, v)     build an entry
std::optional<Value> delta_semantics(DeltaOp op, const DeltaType& type,
                                     std::span<const Value> args);

// Registers F_, B_, V_, Add_, Del_ and Tup_ for `type` (no-op if present).
void add_delta_constants(FSignature& sig, const DeltaType& type);

// Entries of a delta list as a map from argument tuples to values. Later
// entries win; callers check functionality separately.
std::vector<std::pair<Tuple, Value>> delta_entries(const Value& list);

}  // namespace asmlc::lambda

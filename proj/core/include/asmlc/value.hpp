#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace asmlc {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An element of a datatype. Values are the payload of value codes in
// lambda terms and the elements of ASM carriers.
//
// Kinds:
//   Bool   two-constructor datatype, True is constructor 0
//   Nat    natural number (Scott: zero | succ n)
//   Ctor   constructor `index` of `count` applied to `items`
//   Tuple  single-constructor product of `items`
//   Seq    finite sequence of `items` (Scott list: nil | cons h t)
//
// Equality and ordering are structural and include the sort name.
class Value {
 public:
  enum class Kind : std::uint8_t { Bool, Nat, Ctor, Tuple, Seq };

  Value() : sort_("Bool") {}

  static Value boolean(bool b);
  static Value nat(std::uint64_t n, std::string sort = "Nat");
  static Value ctor(std::string sort, std::string name, int index, int count,
                    std::vector<Value> args = {});
  static Value tuple(std::vector<Value> items, std::string sort = "");
  static Value seq(std::vector<Value> items, std::string sort);

  Kind kind() const { return kind_; }
  const std::string& sort() const { return sort_; }

  bool as_bool() const;
  std::uint64_t as_nat() const;
  const std::string& ctor_name() const { return name_; }
  int ctor_index() const { return index_; }
  int ctor_count() const { return count_; }
  const std::vector<Value>& items() const { return items_; }

  bool is_bool() const { return kind_ == Kind::Bool; }

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  // Literal text, e.g. `True`, `12`, `Color.Red`, `(1, 5)`, `L<(1, 5)>`.
  std::string to_string() const;

 private:
  Kind kind_ = Kind::Bool;
  std::string sort_;
  std::uint64_t scalar_ = 0;
  std::string name_;
  int index_ = 0;
  int count_ = 0;
  std::vector<Value> items_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

using Tuple = std::vector<Value>;

std::string tuple_to_string(const Tuple& t);

}  // namespace asmlc

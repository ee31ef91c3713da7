#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "asmlc/lambda/term.hpp"
#include "asmlc/value.hpp"

namespace asmlc {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Constructor names per enumerated sort, needed to read `Sort.Ctor` literals.
struct CtorTable {
  std::map<std::string, std::vector<std::string>> sorts;
};

// Value literal grammar:
//   True | False | NAT | Sort.NAT | Sort.Ctor [ (v, ...) ]
//   | [Sort] ( v, ... ) | Sort< v, ... >
Value parse_value(std::string_view text, const CtorTable* ctors = nullptr);

namespace lambda {

// Term grammar (application is left-associative, abstraction extends right):
//   term := '\' ident+ '.' term | app
//   app  := atom+
//   atom := ident | '#' ident | '[' value ']' | '(' term ')'
// `λ` is accepted for `\`.
Term parse_term(std::string_view text, const CtorTable* ctors = nullptr);

}  // namespace lambda
}  // namespace asmlc

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "asmlc/machine.hpp"

namespace asmlc {

struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string to_string() const;
};

class SourceError : public Error {
 public:
  explicit SourceError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

// Parses the ASM source format (grammar in docs/source-format.md). Throws
// SourceError with every diagnostic found.
Machine parse_machine(std::string_view text);

// Reads a literal of `sort` as written in source files: a number, True,
// False or a constructor name.
Value parse_literal(const Vocabulary& vocab, const std::string& sort, std::string_view text);
std::string literal_text(const Value& v);

std::string print_expr(const Expr& e);
std::string print_program(const Program& p, int indent = 0);
// Source text that parses back to a structurally equal machine.
std::string print_machine(const Machine& m);

// Structural equality ignoring semantic function objects.
bool same_structure(const Machine& a, const Machine& b);

}  // namespace asmlc

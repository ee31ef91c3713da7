#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asmlc/value.hpp"

namespace asmlc::lambda {

enum class TermKind : std::uint8_t { Var, Abs, App, Const, Code };

class Term;

// Immutable node. Built only through the Term factories.
struct Node {
  TermKind kind;
  std::string name;  // variable, binder or constant name
  std::shared_ptr<const Node> left;   // Abs body, App function
  std::shared_ptr<const Node> right;  // App argument
  std::shared_ptr<const Value> value;  // Code payload
  std::vector<std::string> free;  // sorted free variables
  std::size_t size = 1;
  bool has_const = false;  // some Const node below
  bool has_beta = false;   // some beta-redex below, this node included
};

// An untyped lambda term extended with constants `#c` and value codes `[v]`.
// Terms are persistent values; copying shares structure. Equality is
// alpha-equivalence.
class Term {
 public:
  Term() = default;

  static Term var(std::string name);
  static Term abs(std::string binder, Term body);
  // \x1 ... xn. body
  static Term abs(const std::vector<std::string>& binders, Term body);
  static Term app(Term fun, Term arg);
  // f a1 ... an, left-associated
  static Term apps(Term head, const std::vector<Term>& args);
  static Term constant(std::string name);
  static Term code(Value v);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const { return node_->kind; }
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_abs() const { return kind() == TermKind::Abs; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_const() const { return kind() == TermKind::Const; }
  bool is_code() const { return kind() == TermKind::Code; }

  // Var name, Abs binder or Const name.
  const std::string& name() const { return node_->name; }
  Term body() const { return Term(node_->left); }
  Term fun() const { return Term(node_->left); }
  Term arg() const { return Term(node_->right); }
  const Value& value() const { return *node_->value; }

  std::size_t size() const { return node_->size; }
  const std::vector<std::string>& free_vars() const { return node_->free; }
  bool has_free(std::string_view x) const;
  bool closed() const { return node_->free.empty(); }
  bool has_const() const { return node_->has_const; }
  bool has_beta_redex() const { return node_->has_beta; }

  // Head and arguments of an application spine: f a1 ... an.
  Term head() const;
  std::vector<Term> spine_args() const;

  // Same node, no alpha check.
  bool identical(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

  // Text form accepted by parse_term.
  std::string to_string() const;
  // Binder-independent rendering (de Bruijn indices); equal iff alpha-equal.
  std::string canonical() const;

  const std::shared_ptr<const Node>& node() const { return node_; }
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const Node> node_;
};

bool alpha_equal(const Term& a, const Term& b);

// M[N/x], capture-avoiding. Bound variables of `body` that would capture a
// free variable of `replacement` are renamed by appending primes.
Term substitute(const Term& body, const std::string& var, const Term& replacement);

// Scott term of a value, one constructor level deep: nested values stay as
// codes. Always an abstraction.
Term scott_head(const Value& v);

// Child selector in a redex address.
enum class Step : std::uint8_t { Fun, Arg, Body };

using Address = std::vector<Step>;

std::string address_to_string(const Address& a);

// Subterm at `at`; throws Error when the path does not resolve.
Term subterm(const Term& t, const Address& at);
// `t` with the subterm at `at` replaced.
Term replace_at(const Term& t, const Address& at, const Term& replacement);

}  // namespace asmlc::lambda

#include "asmlc/lambda/parse.hpp"

#include <algorithm>
#include <cctype>

namespace asmlc {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Cursor {
 public:
  Cursor(std::string_view s, const CtorTable* ctors) : s_(s), ctors_(ctors) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  bool peek_ident() { return ident_start(peek()); }
  bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  std::uint64_t number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return std::stoull(std::string(s_.substr(start, pos_ - start)));
  }

  // No whitespace skipping: used right after an identifier.
  bool immediate(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  std::vector<Value> value_list(char close) {
    std::vector<Value> items;
    if (accept(std::string_view(&close, 1))) return items;
    for (;;) {
      items.push_back(value());
      if (accept(",")) continue;
      expect(std::string_view(&close, 1));
      return items;
    }
  }

  Value value() {
    if (accept("(")) return Value::tuple(value_list(')'));
    if (peek_digit()) return Value::nat(number());
    std::string word = ident();
    if (word == "True") return Value::boolean(true);
    if (word == "False") return Value::boolean(false);
    if (immediate('(')) {
      ++pos_;
      return Value::tuple(value_list(')'), word);
    }
    if (immediate('<')) {
      ++pos_;
      return Value::seq(value_list('>'), word);
    }
    if (!immediate('.')) fail("unknown value literal '" + word + "'");
    ++pos_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      return Value::nat(number(), word);
    }
    std::string ctor = ident();
    std::vector<Value> args;
    if (immediate('(')) {
      ++pos_;
      args = value_list(')');
    }
    if (ctors_ == nullptr) fail("no datatype table to resolve " + word + "." + ctor);
    auto it = ctors_->sorts.find(word);
    if (it == ctors_->sorts.end()) fail("unknown sort " + word);
    auto pos = std::find(it->second.begin(), it->second.end(), ctor);
    if (pos == it->second.end()) fail("unknown constructor " + word + "." + ctor);
    return Value::ctor(word, ctor, static_cast<int>(pos - it->second.begin()),
                       static_cast<int>(it->second.size()), std::move(args));
  }

  lambda::Term term() {
    if (accept("\\") || accept("λ")) {
      std::vector<std::string> binders;
      while (peek_ident()) binders.push_back(ident());
      if (binders.empty()) fail("abstraction without binder");
      expect(".");
      return lambda::Term::abs(binders, term());
    }
    std::optional<lambda::Term> acc;
    while (true) {
      char c = peek();
      if (c == '\\' || s_.substr(pos_, 2) == "λ") {
        // trailing abstraction swallows the rest
        lambda::Term t = term();
        acc = acc ? lambda::Term::app(*acc, t) : t;
        break;
      }
      if (!(ident_start(c) || c == '#' || c == '[' || c == '(')) break;
      lambda::Term a = atom();
      acc = acc ? lambda::Term::app(*acc, a) : a;
    }
    if (!acc) fail("expected term");
    return *acc;
  }

  lambda::Term atom() {
    if (accept("(")) {
      lambda::Term t = term();
      expect(")");
      return t;
    }
    if (accept("#")) return lambda::Term::constant(ident());
    if (accept("[")) {
      Value v = value();
      expect("]");
      return lambda::Term::code(std::move(v));
    }
    return lambda::Term::var(ident());
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  const CtorTable* ctors_;
  std::size_t pos_ = 0;
};

}  // namespace

Value parse_value(std::string_view text, const CtorTable* ctors) {
  Cursor c(text, ctors);
  Value v = c.value();
  if (!c.at_end()) c.fail("trailing input after value");
  return v;
}

namespace lambda {

Term parse_term(std::string_view text, const CtorTable* ctors) {
  Cursor c(text, ctors);
  Term t = c.term();
  if (!c.at_end()) c.fail("trailing input after term");
  return t;
}

}  // namespace lambda
}  // namespace asmlc

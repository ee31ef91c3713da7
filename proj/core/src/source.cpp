#include "asmlc/source.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace asmlc {

std::string Diagnostic::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

std::string join_diags(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += d.to_string();
  }
  return out;
}

}  // namespace

SourceError::SourceError(std::vector<Diagnostic> diags)
    : Error(join_diags(diags)), diags_(std::move(diags)) {}

namespace {

enum class Tok { Ident, Nat, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line;
    std::size_t cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Nat, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    for (std::string_view p : {"->", "..", ":="}) {
      if (src.substr(i, 2) == p) {
        out.push_back({Tok::Punct, std::string(p), l, cl});
        advance(2);
        goto next;
      }
    }
    if (std::string_view(";:=,(){}*").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw SourceError({{l, cl, std::string("unexpected character '") + c + "'"}});
  next:;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Machine parse() {
    while (peek().kind != Tok::End) declaration();
    if (!have_program_) diag(peek(), "missing program");
    if (diags_.empty()) {
      for (const auto* d : m_.vocab.dynamics()) {
        if (m_.init.count(d->name) == 0) diag(peek(), "dynamic symbol " + d->name + " has no init rule");
      }
    }
    if (!diags_.empty()) throw SourceError(diags_);
    return std::move(m_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  bool accept(std::string_view text) {
    if (peek().kind != Tok::End && peek().kind != Tok::Nat && peek().text == text) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    diags_.push_back({t.line, t.column, msg});
    throw SourceError(diags_);
  }

  void diag(const Token& t, const std::string& msg) { diags_.push_back({t.line, t.column, msg}); }

  void expect(std::string_view text) {
    if (!accept(text)) {
      fail(peek(), "expected '" + std::string(text) + "'" +
                       (peek().kind == Tok::End ? " at end of input" : " before '" + peek().text + "'"));
    }
  }

  std::string ident() {
    if (peek().kind != Tok::Ident) fail(peek(), "expected identifier");
    return take().text;
  }

  std::uint64_t number() {
    if (peek().kind != Tok::Nat) fail(peek(), "expected number");
    const Token& t = take();
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc()) fail(t, "number out of range");
    return n;
  }

  template <typename F>
  void guarded(const Token& at, F&& f) {
    try {
      f();
    } catch (const SourceError&) {
      throw;
    } catch (const Error& e) {
      diag(at, e.what());
    }
  }

  void declaration() {
    const Token& at = peek();
    if (have_program_) fail(at, "declarations must precede the program");
    std::string kw = ident();
    if (kw == "machine") {
      m_.name = ident();
      expect(";");
    } else if (kw == "sort") {
      sort_decl(at);
    } else if (kw == "static") {
      static_decl(at);
    } else if (kw == "dynamic") {
      dynamic_decl(at);
    } else if (kw == "init") {
      init_decl(at);
    } else if (kw == "program") {
      Program p = program();
      accept(";");
      have_program_ = true;
      m_.program = std::move(p);
    } else {
      fail(at, "unknown declaration '" + kw + "'");
    }
  }

  void sort_decl(const Token& at) {
    std::string name = ident();
    expect("=");
    Sort s{name, {}};
    std::vector<std::string> ctor_names;
    if (accept("{")) {
      do {
        ctor_names.push_back(ident());
      } while (accept(","));
      expect("}");
      for (std::size_t i = 0; i < ctor_names.size(); ++i) {
        s.carrier.push_back(Value::ctor(name, ctor_names[i], static_cast<int>(i), static_cast<int>(ctor_names.size())));
      }
    } else {
      std::uint64_t lo = number();
      expect("..");
      std::uint64_t hi = number();
      if (hi < lo) fail(at, "empty range for sort " + name);
      if (hi - lo > 100000) fail(at, "carrier of " + name + " is too large");
      for (std::uint64_t n = lo; n <= hi; ++n) s.carrier.push_back(Value::nat(n, name));
    }
    expect(";");
    guarded(at, [&] {
      m_.vocab.add_sort(s);
      for (const auto& v : s.carrier) {
        if (v.kind() != Value::Kind::Ctor) continue;
        Symbol c = literal_symbol(v.ctor_name(), name, v);
        c.binding.kind = StaticBinding::Kind::Auto;
        m_.vocab.add_symbol(std::move(c));
      }
    });
  }

  std::pair<std::vector<std::string>, std::string> profile() {
    std::vector<std::string> sorts{ident()};
    while (accept("*")) sorts.push_back(ident());
    if (accept("->")) {
      return {sorts, ident()};
    }
    if (sorts.size() != 1) fail(peek(), "expected '->' in profile");
    return {{}, sorts[0]};
  }

  Value literal(const std::string& sort) {
    const Token& t = take();
    try {
      return parse_literal(m_.vocab, sort, t.text);
    } catch (const Error& e) {
      fail(t, e.what());
    }
  }

  void static_decl(const Token& at) {
    bool input = accept("input");
    std::string name = ident();
    expect(":");
    auto [args, result] = profile();
    std::optional<Symbol> sym;
    if (accept("=")) {
      if (input) fail(at, "input " + name + " cannot have a binding");
      if (accept("builtin")) {
        std::string b = ident();
        guarded(at, [&] { sym = builtin_symbol(m_.vocab, name, b, args, result); });
      } else if (accept("table")) {
        expect("{");
        std::vector<std::pair<Tuple, Value>> entries;
        if (!accept("}")) {
          do {
            Tuple key;
            if (accept("(")) {
              std::size_t i = 0;
              do {
                if (i >= args.size()) fail(peek(), "table key of " + name + " has too many components");
                key.push_back(literal(args[i++]));
              } while (accept(","));
              expect(")");
            } else {
              if (args.empty()) fail(peek(), "constant " + name + " cannot have a table");
              key.push_back(literal(args[0]));
            }
            expect("->");
            entries.emplace_back(std::move(key), literal(result));
          } while (accept(","));
          expect("}");
        }
        guarded(at, [&] { sym = table_symbol(m_.vocab, name, args, result, std::move(entries)); });
      } else {
        if (!args.empty()) fail(at, "only constants take a literal binding");
        Value v = literal(result);
        sym = literal_symbol(name, result, v);
      }
    } else if (input) {
      Symbol s;
      s.name = name;
      s.kind = SymbolKind::Static;
      s.arg_sorts = args;
      s.result_sort = result;
      s.input = true;
      s.binding.kind = StaticBinding::Kind::Input;
      sym = std::move(s);
    } else {
      fail(at, "static " + name + " needs a binding");
    }
    expect(";");
    if (sym) guarded(at, [&] { m_.vocab.add_symbol(std::move(*sym)); });
  }

  void dynamic_decl(const Token& at) {
    bool output = accept("output");
    std::string name = ident();
    expect(":");
    auto [args, result] = profile();
    expect(";");
    Symbol s;
    s.name = name;
    s.kind = SymbolKind::Dynamic;
    s.arg_sorts = args;
    s.result_sort = result;
    s.output = output;
    guarded(at, [&] { m_.vocab.add_symbol(std::move(s)); });
  }

  void init_decl(const Token& at) {
    std::string name = ident();
    std::vector<std::string> params;
    if (accept("(")) {
      do {
        params.push_back(ident());
      } while (accept(","));
      expect(")");
    }
    expect("=");
    params_ = &params;
    Expr t = term();
    params_ = nullptr;
    expect(";");
    guarded(at, [&] {
      const Symbol& d = m_.vocab.symbol(name);
      if (!d.is_dynamic()) throw SortError("init rule for non-dynamic symbol " + name);
      if (m_.init.count(name) != 0) throw SortError("second init rule for " + name);
      if (params.size() != d.arity()) {
        throw SortError("init rule of " + name + " needs " + std::to_string(d.arity()) + " parameters");
      }
      check_static_only(t);
      if (sort_of(m_.vocab, t, d.arg_sorts) != d.result_sort) {
        throw SortError("init term of " + name + " has the wrong sort");
      }
      m_.init[name] = InitRule{params, std::move(t)};
    });
  }

  void check_static_only(const Expr& e) {
    if (e.is_var()) return;
    const Symbol& s = m_.vocab.symbol(e.name);
    if (!s.is_static()) {
      throw SortError("init terms may use only static symbols, found dynamic " + e.name);
    }
    for (const auto& a : e.args) check_static_only(a);
  }

  Expr term() {
    std::string name = ident();
    if (params_ != nullptr) {
      for (std::size_t i = 0; i < params_->size(); ++i) {
        if ((*params_)[i] == name) return Expr::var(name, i);
      }
    }
    std::vector<Expr> args;
    if (accept("(")) {
      if (!accept(")")) {
        do {
          args.push_back(term());
        } while (accept(","));
        expect(")");
      }
    }
    return Expr::apply(std::move(name), std::move(args));
  }

  Program program() {
    const Token& at = peek();
    if (accept("skip")) return Program::skip();
    if (accept("halt")) return Program::halt();
    if (accept("fail")) return Program::fail();
    if (accept("if")) {
      Expr c = term();
      guarded(at, [&] {
        if (sort_of(m_.vocab, c) != "Bool") throw SortError("condition " + c.to_string() + " is not Bool");
      });
      expect("then");
      Program t = program();
      Program e = accept("else") ? program() : Program::skip();
      return Program::if_(std::move(c), std::move(t), std::move(e));
    }
    if (accept("par")) {
      expect("{");
      std::vector<Program> blocks;
      while (!accept("}")) {
        blocks.push_back(program());
        if (!accept(";")) {
          expect("}");
          break;
        }
      }
      return Program::par(std::move(blocks));
    }
    Expr lhs = term();
    expect(":=");
    Expr rhs = term();
    Program p = Program::assign(lhs.name, lhs.args, std::move(rhs));
    guarded(at, [&] {
      const Symbol& s = m_.vocab.symbol(p.update.symbol);
      if (!s.is_dynamic()) {
        throw SortError("left side of an update must be a dynamic symbol, found static " + s.name);
      }
      std::string ls = sort_of(m_.vocab, Expr::apply(p.update.symbol, p.update.args));
      std::string rs = sort_of(m_.vocab, p.update.rhs);
      if (ls != rs) throw SortError("update " + p.update.to_string() + " assigns " + rs + " to " + ls);
    });
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Machine m_;
  std::vector<Diagnostic> diags_;
  const std::vector<std::string>* params_ = nullptr;
  bool have_program_ = false;
};

}  // namespace

Machine parse_machine(std::string_view text) { return Parser(text).parse(); }

Value parse_literal(const Vocabulary& vocab, const std::string& sort, std::string_view text) {
  const Sort& s = vocab.sort(sort);
  for (const auto& v : s.carrier) {
    if (literal_text(v) == text) return v;
  }
  throw SortError("'" + std::string(text) + "' is not an element of " + sort);
}

std::string literal_text(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Nat:
      return std::to_string(v.as_nat());
    case Value::Kind::Ctor:
      if (v.items().empty()) return v.ctor_name();
      break;
    default:
      break;
  }
  return v.to_string();
}

std::string print_expr(const Expr& e) { return e.to_string(); }

std::string print_program(const Program& p, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (p.kind) {
    case Program::Kind::Skip: return pad + "skip";
    case Program::Kind::Halt: return pad + "halt";
    case Program::Kind::Fail: return pad + "fail";
    case Program::Kind::Update: return pad + p.update.to_string();
    case Program::Kind::If:
      return pad + "if " + p.cond.to_string() + " then\n" + print_program(p.children[0], indent + 2) + "\n" +
             pad + "else\n" + print_program(p.children[1], indent + 2);
    case Program::Kind::Par: {
      std::string out = pad + "par {";
      for (std::size_t i = 0; i < p.children.size(); ++i) {
        out += (i ? ";\n" : "\n") + print_program(p.children[i], indent + 2);
      }
      return out + "\n" + pad + "}";
    }
  }
  return pad;
}

namespace {

std::string profile_text(const Symbol& s) {
  std::string out;
  for (std::size_t i = 0; i < s.arg_sorts.size(); ++i) out += (i ? " * " : "") + s.arg_sorts[i];
  if (!s.arg_sorts.empty()) out += " -> ";
  return out + s.result_sort;
}

}  // namespace

std::string print_machine(const Machine& m) {
  std::string out;
  if (!m.name.empty()) out += "machine " + m.name + ";\n\n";
  for (const auto& s : m.vocab.sorts()) {
    if (s.name == "Bool") continue;
    out += "sort " + s.name + " = ";
    if (!s.carrier.empty() && s.carrier.front().kind() == Value::Kind::Ctor) {
      out += "{";
      for (std::size_t i = 0; i < s.carrier.size(); ++i) out += (i ? ", " : "") + s.carrier[i].ctor_name();
      out += "}";
    } else {
      out += literal_text(s.carrier.front()) + ".." + literal_text(s.carrier.back());
    }
    out += ";\n";
  }
  out += "\n";
  for (const auto& s : m.vocab.symbols()) {
    if (s.is_dynamic()) {
      out += std::string("dynamic ") + (s.output ? "output " : "") + s.name + " : " + profile_text(s) + ";\n";
      continue;
    }
    switch (s.binding.kind) {
      case StaticBinding::Kind::Auto:
        break;
      case StaticBinding::Kind::Input:
        out += "static input " + s.name + " : " + profile_text(s) + ";\n";
        break;
      case StaticBinding::Kind::Builtin:
        out += "static " + s.name + " : " + profile_text(s) + " = builtin " + s.binding.builtin + ";\n";
        break;
      case StaticBinding::Kind::Literal:
        out += "static " + s.name + " : " + profile_text(s) + " = " + literal_text(s.binding.literal) + ";\n";
        break;
      case StaticBinding::Kind::Table: {
        out += "static " + s.name + " : " + profile_text(s) + " = table {";
        bool first = true;
        for (const auto& [k, v] : s.binding.table) {
          out += first ? " " : ", ";
          first = false;
          out += "(";
          for (std::size_t i = 0; i < k.size(); ++i) out += (i ? ", " : "") + literal_text(k[i]);
          out += ") -> " + literal_text(v);
        }
        out += " };\n";
        break;
      }
    }
  }
  out += "\n";
  for (const auto* d : m.vocab.dynamics()) {
    auto it = m.init.find(d->name);
    if (it == m.init.end()) continue;
    out += "init " + d->name;
    if (!it->second.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < it->second.params.size(); ++i) out += (i ? ", " : "") + it->second.params[i];
      out += ")";
    }
    out += " = " + it->second.term.to_string() + ";\n";
  }
  out += "\nprogram\n" + print_program(m.program, 2) + ";\n";
  return out;
}

bool same_structure(const Machine& a, const Machine& b) {
  if (a.name != b.name || !(a.init == b.init) || !(a.program == b.program)) return false;
  const auto& sa = a.vocab.sorts();
  const auto& sb = b.vocab.sorts();
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].name != sb[i].name || sa[i].carrier != sb[i].carrier) return false;
  }
  const auto& ya = a.vocab.symbols();
  const auto& yb = b.vocab.symbols();
  if (ya.size() != yb.size()) return false;
  for (std::size_t i = 0; i < ya.size(); ++i) {
    const auto& x = ya[i];
    const auto& y = yb[i];
    if (x.name != y.name || x.kind != y.kind || x.arg_sorts != y.arg_sorts || x.result_sort != y.result_sort ||
        x.input != y.input || x.output != y.output || x.binding.kind != y.binding.kind ||
        x.binding.builtin != y.binding.builtin || x.binding.table != y.binding.table || x.total != y.total) {
      return false;
    }
    if (x.binding.kind == StaticBinding::Kind::Literal && x.binding.literal != y.binding.literal) return false;
  }
  return true;
}

}  // namespace asmlc

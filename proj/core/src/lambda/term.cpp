#include "asmlc/lambda/term.hpp"

#include <algorithm>
#include <unordered_map>

namespace asmlc::lambda {
namespace {

std::vector<std::string> merge_free(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<std::string>& sorted, std::string_view x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  return it != sorted.end() && *it == x;
}

std::string fresh_name(const std::string& base, const Term& body,
                       const std::vector<std::string>& avoid, const std::string& also) {
  std::string candidate = base + "'";
  while (body.has_free(candidate) || contains(avoid, candidate) || candidate == also) {
    candidate += "'";
  }
  return candidate;
}

Term subst_rec(const Term& m, const std::string& x, const Term& n) {
  if (!m.has_free(x)) return m;
  switch (m.kind()) {
    case TermKind::Var:
      return n;
    case TermKind::App: {
      Term f = subst_rec(m.fun(), x, n);
      Term a = subst_rec(m.arg(), x, n);
      return Term::app(std::move(f), std::move(a));
    }
    case TermKind::Abs: {
      // x is free in m, so the binder differs from x.
      const std::string& y = m.name();
      if (n.has_free(y)) {
        std::string y2 = fresh_name(y, m.body(), n.free_vars(), x);
        Term renamed = subst_rec(m.body(), y, Term::var(y2));
        return Term::abs(y2, subst_rec(renamed, x, n));
      }
      return Term::abs(y, subst_rec(m.body(), x, n));
    }
    case TermKind::Const:
    case TermKind::Code:
      return m;
  }
  return m;
}

bool alpha_rec(const Term& a, const Term& b, std::vector<std::pair<std::string_view, std::string_view>>& env) {
  if (a.kind() != b.kind()) return false;
  if (a.identical(b) && a.closed()) return true;
  switch (a.kind()) {
    case TermKind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool la = it->first == a.name();
        bool lb = it->second == b.name();
        if (la || lb) return la && lb;
      }
      return a.name() == b.name();
    }
    case TermKind::Abs: {
      env.emplace_back(a.name(), b.name());
      bool ok = alpha_rec(a.body(), b.body(), env);
      env.pop_back();
      return ok;
    }
    case TermKind::App:
      return alpha_rec(a.fun(), b.fun(), env) && alpha_rec(a.arg(), b.arg(), env);
    case TermKind::Const:
      return a.name() == b.name();
    case TermKind::Code:
      return a.value() == b.value();
  }
  return false;
}

bool needs_parens_as_fun(const Term& t) { return t.is_abs(); }
bool needs_parens_as_arg(const Term& t) { return t.is_abs() || t.is_app(); }

void print_rec(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var:
      out += t.name();
      return;
    case TermKind::Const:
      out += '#';
      out += t.name();
      return;
    case TermKind::Code:
      out += '[';
      out += t.value().to_string();
      out += ']';
      return;
    case TermKind::Abs: {
      out += '\\';
      out += t.name();
      Term b = t.body();
      while (b.is_abs()) {
        out += ' ';
        out += b.name();
        b = b.body();
      }
      out += ". ";
      print_rec(b, out);
      return;
    }
    case TermKind::App: {
      Term f = t.fun();
      Term a = t.arg();
      if (needs_parens_as_fun(f)) {
        out += '(';
        print_rec(f, out);
        out += ')';
      } else {
        print_rec(f, out);
      }
      out += ' ';
      if (needs_parens_as_arg(a)) {
        out += '(';
        print_rec(a, out);
        out += ')';
      } else {
        print_rec(a, out);
      }
      return;
    }
  }
}

void canonical_rec(const Term& t, std::vector<std::string_view>& env, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (env[i] == t.name()) {
          out += '%';
          out += std::to_string(env.size() - 1 - i);
          return;
        }
      }
      out += t.name();
      return;
    }
    case TermKind::Const:
      out += '#';
      out += t.name();
      return;
    case TermKind::Code:
      out += '[';
      out += t.value().to_string();
      out += ']';
      return;
    case TermKind::Abs:
      out += "(\\";
      env.push_back(t.name());
      canonical_rec(t.body(), env, out);
      env.pop_back();
      out += ')';
      return;
    case TermKind::App:
      out += '(';
      canonical_rec(t.fun(), env, out);
      out += ' ';
      canonical_rec(t.arg(), env, out);
      out += ')';
      return;
  }
}

}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->free = {name};
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::abs(std::string binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Abs;
  n->free = body.free_vars();
  if (auto it = std::lower_bound(n->free.begin(), n->free.end(), binder);
      it != n->free.end() && *it == binder) {
    n->free.erase(it);
  }
  n->size = 1 + body.size();
  n->has_const = body.has_const();
  n->has_beta = body.has_beta_redex();
  n->name = std::move(binder);
  n->left = body.node_;
  return Term(std::move(n));
}

Term Term::abs(const std::vector<std::string>& binders, Term body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
    body = abs(*it, std::move(body));
  }
  return body;
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->free = merge_free(fun.free_vars(), arg.free_vars());
  n->size = 1 + fun.size() + arg.size();
  n->has_const = fun.has_const() || arg.has_const();
  n->has_beta = fun.is_abs() || fun.is_code() || fun.has_beta_redex() || arg.has_beta_redex();
  n->left = fun.node_;
  n->right = arg.node_;
  return Term(std::move(n));
}

Term Term::apps(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Const;
  n->has_const = true;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::code(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Code;
  n->value = std::make_shared<const Value>(std::move(v));
  return Term(std::move(n));
}

bool Term::has_free(std::string_view x) const { return contains(node_->free, x); }

Term Term::head() const {
  Term t = *this;
  while (t.is_app()) t = t.fun();
  return t;
}

std::vector<Term> Term::spine_args() const {
  std::vector<Term> args;
  Term t = *this;
  while (t.is_app()) {
    args.push_back(t.arg());
    t = t.fun();
  }
  std::reverse(args.begin(), args.end());
  return args;
}

bool alpha_equal(const Term& a, const Term& b) {
  if (a.free_vars() != b.free_vars() || a.size() != b.size()) return false;
  std::vector<std::pair<std::string_view, std::string_view>> env;
  return alpha_rec(a, b, env);
}

bool operator==(const Term& a, const Term& b) { return alpha_equal(a, b); }

std::string Term::to_string() const {
  std::string out;
  print_rec(*this, out);
  return out;
}

std::string Term::canonical() const {
  std::string out;
  std::vector<std::string_view> env;
  canonical_rec(*this, env, out);
  return out;
}

Term substitute(const Term& body, const std::string& var, const Term& replacement) {
  return subst_rec(body, var, replacement);
}

Term scott_head(const Value& v) {
  // \a1 ... ap. a_i c1 ... ck with the fields as codes.
  auto selector = [](int index, int count, const std::vector<Term>& fields) {
    std::vector<std::string> binders;
    for (int j = 0; j < count; ++j) binders.push_back("s" + std::to_string(j + 1));
    return Term::abs(binders, Term::apps(Term::var(binders[index]), fields));
  };
  auto codes = [](const std::vector<Value>& vs) {
    std::vector<Term> out;
    out.reserve(vs.size());
    for (const auto& x : vs) out.push_back(Term::code(x));
    return out;
  };
  switch (v.kind()) {
    case Value::Kind::Bool:
      return selector(v.as_bool() ? 0 : 1, 2, {});
    case Value::Kind::Nat:
      if (v.as_nat() == 0) return selector(0, 2, {});
      return selector(1, 2, {Term::code(Value::nat(v.as_nat() - 1, v.sort()))});
    case Value::Kind::Ctor:
      return selector(v.ctor_index(), v.ctor_count(), codes(v.items()));
    case Value::Kind::Tuple:
      return selector(0, 1, codes(v.items()));
    case Value::Kind::Seq: {
      if (v.items().empty()) return selector(0, 2, {});
      std::vector<Value> rest(v.items().begin() + 1, v.items().end());
      return selector(1, 2, {Term::code(v.items().front()), Term::code(Value::seq(std::move(rest), v.sort()))});
    }
  }
  throw Error("no Scott form for value");
}

std::string address_to_string(const Address& a) {
  if (a.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += '.';
    switch (a[i]) {
      case Step::Fun: out += "fun"; break;
      case Step::Arg: out += "arg"; break;
      case Step::Body: out += "body"; break;
    }
  }
  return out;
}

Term subterm(const Term& t, const Address& at) {
  Term cur = t;
  for (Step s : at) {
    if (s == Step::Body && cur.is_abs()) {
      cur = cur.body();
    } else if (s == Step::Fun && cur.is_app()) {
      cur = cur.fun();
    } else if (s == Step::Arg && cur.is_app()) {
      cur = cur.arg();
    } else {
      throw Error("address " + address_to_string(at) + " does not resolve");
    }
  }
  return cur;
}

namespace {
Term replace_rec(const Term& t, const Address& at, std::size_t i, const Term& r) {
  if (i == at.size()) return r;
  switch (at[i]) {
    case Step::Body:
      if (!t.is_abs()) break;
      return Term::abs(t.name(), replace_rec(t.body(), at, i + 1, r));
    case Step::Fun:
      if (!t.is_app()) break;
      return Term::app(replace_rec(t.fun(), at, i + 1, r), t.arg());
    case Step::Arg:
      if (!t.is_app()) break;
      return Term::app(t.fun(), replace_rec(t.arg(), at, i + 1, r));
  }
  throw Error("address " + address_to_string(at) + " does not resolve");
}
}  // namespace

Term replace_at(const Term& t, const Address& at, const Term& replacement) {
  return replace_rec(t, at, 0, replacement);
}

}  // namespace asmlc::lambda

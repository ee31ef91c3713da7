#include "asmlc/good_terms.hpp"

#include "asmlc/lambda/reduce.hpp"

namespace asmlc::good {

FSignature signature_of(const Vocabulary& vocab) {
  FSignature sig;
  for (const auto& s : vocab.symbols()) {
    if (!s.is_static() || s.input) continue;
    sig.add({s.name, s.arg_sorts, s.result_sort, s.fn, s.total});
  }
  return sig;
}

std::string slot_variable(const std::string& name) { return "x_" + name; }

Term from_asm_term(const Vocabulary& vocab, const Expr& e, const Translation& tr) {
  if (e.is_var()) {
    if (e.index >= tr.params.size()) throw Error("unbound parameter " + e.name);
    return tr.params[e.index];
  }
  const Symbol& s = vocab.symbol(e.name);
  if (s.is_dynamic()) {
    if (s.arity() != 0) throw NotTypeZero("dynamic symbol " + s.name + " has arity " + std::to_string(s.arity()));
    auto it = tr.dynamic_constants.find(s.name);
    return it != tr.dynamic_constants.end() ? it->second : Term::var(slot_variable(s.name));
  }
  if (s.input) {
    auto it = tr.dynamic_constants.find(s.name);
    if (it == tr.dynamic_constants.end()) throw Error("input " + s.name + " has no variable");
    return it->second;
  }
  std::vector<Term> args;
  for (const auto& a : e.args) args.push_back(from_asm_term(vocab, a, tr));
  return Term::apps(Term::constant(s.name), args);
}

bool is_good(const Term& t, const FSignature& sig) {
  if (t.is_var() || t.is_code()) return true;
  Term head = t.head();
  if (!head.is_const()) return false;
  const auto* f = sig.find(head.name());
  auto args = t.spine_args();
  if (f == nullptr || f->arity() != args.size()) return false;
  for (const auto& a : args) {
    if (!is_good(a, sig)) return false;
  }
  return true;
}

std::size_t const_nodes(const Term& t) {
  switch (t.kind()) {
    case lambda::TermKind::Const:
      return 1;
    case lambda::TermKind::App:
      return const_nodes(t.fun()) + const_nodes(t.arg());
    case lambda::TermKind::Abs:
      return const_nodes(t.body());
    default:
      return 0;
  }
}

Term instantiate(const Term& t, const Valuation& val) {
  Term out = t;
  for (const auto& [name, v] : val) {
    if (out.has_free(name)) out = lambda::substitute(out, name, Term::code(v));
  }
  return out;
}

std::optional<Value> denote(const Term& t, const FSignature& sig, const Valuation& val) {
  if (t.is_code()) return t.value();
  if (t.is_var()) {
    auto it = val.find(t.name());
    if (it == val.end()) throw Error("no value for variable " + t.name());
    return it->second;
  }
  Term head = t.head();
  const auto* f = head.is_const() ? sig.find(head.name()) : nullptr;
  if (f == nullptr) throw Error("not a good term: " + t.to_string());
  std::vector<Value> args;
  for (const auto& a : t.spine_args()) {
    auto v = denote(a, sig, val);
    if (!v) return std::nullopt;
    args.push_back(std::move(*v));
  }
  return f->fn(args);
}

std::optional<Cost> reduce_cost(const Term& t, const FSignature& sig, const Valuation& val) {
  auto r = lambda::reduce_leftmost_f(instantiate(t, val), sig, 1u << 20, lambda::TraceMode::CountsOnly);
  if (r.status == lambda::ReduceStatus::Undefined) return std::nullopt;
  if (r.status != lambda::ReduceStatus::Normal || !r.term.is_code()) {
    throw Error("good term did not reduce to a code: " + t.to_string());
  }
  return Cost{r.term.value(), r.trace.f_count, r.trace.beta_count};
}

Term fold(const Term& t, const FSignature& sig) {
  if (t.is_var() || t.is_code()) return t;
  if (t.closed() && t.has_const()) {
    auto r = lambda::reduce_leftmost_f(t, sig, 1u << 20, lambda::TraceMode::CountsOnly);
    if (r.status == lambda::ReduceStatus::Normal && r.term.is_code()) return r.term;
  }
  switch (t.kind()) {
    case lambda::TermKind::App:
      return Term::app(fold(t.fun(), sig), fold(t.arg(), sig));
    case lambda::TermKind::Abs:
      return Term::abs(t.name(), fold(t.body(), sig));
    default:
      return t;
  }
}

}  // namespace asmlc::good

#include "asmlc/lambda/reduce.hpp"

#include <algorithm>
#include <unordered_map>

#include "asmlc/lambda/fcalculus.hpp"

namespace asmlc::lambda {
namespace {

using NodePtr = const Node*;
using Handle = std::shared_ptr<const Node>;

// Subterms a leftmost F-search already found free of F-redexes. Nodes are
// immutable, so the finding holds for as long as the handle keeps them alive.
struct FCleanMemo {
  std::unordered_map<NodePtr, Handle> clean;
};

// Application spine f a1 ... an over node pointers. The arguments live in a
// buffer shared by the whole walk; a spine owns [begin, begin + n).
struct Spine {
  NodePtr head = nullptr;
  const std::vector<const Handle*>* buf = nullptr;
  std::size_t begin = 0;
  std::size_t n = 0;

  NodePtr arg(std::size_t i) const { return (*buf)[begin + i]->get(); }
  const Handle& handle(std::size_t i) const { return *(*buf)[begin + i]; }
};

// Pushes the spine arguments of `t` onto `buf` in order.
Spine spine_into(NodePtr t, std::vector<const Handle*>& buf) {
  Spine s;
  s.begin = buf.size();
  NodePtr cur = t;
  while (cur->kind == TermKind::App) {
    buf.push_back(&cur->right);
    cur = cur->left.get();
  }
  s.head = cur;
  s.n = buf.size() - s.begin;
  std::reverse(buf.begin() + static_cast<std::ptrdiff_t>(s.begin), buf.end());
  s.buf = &buf;
  return s;
}

void push_fun(Address& path, std::size_t n) { path.insert(path.end(), n, Step::Fun); }

Term contract(const Term& redex) {
  Term f = redex.fun();
  if (f.is_code()) f = scott_head(f.value());
  return substitute(f.body(), f.name(), redex.arg());
}

// Visits redexes in prefix order. `spine_redex` returns how many Fun steps
// below the spine top a redex sits, or -1. `prune` skips a subterm known to
// hold no redex; `clean` hears of every subterm walked without a stop.
// Returns true once `visit` stops.
template <typename SpineRedex, typename Visit, typename Prune, typename Clean>
bool walk(const Handle& h, Address& path, std::vector<const Handle*>& buf, SpineRedex&& spine_redex, Visit&& visit,
          Prune&& prune, Clean&& clean) {
  NodePtr t = h.get();
  if (prune(t)) return false;
  bool stop = false;
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Code:
      return false;
    case TermKind::Const: {
      Spine s{t, &buf, buf.size(), 0};
      if (spine_redex(s) == 0) stop = visit(path);
      break;
    }
    case TermKind::Abs:
      path.push_back(Step::Body);
      stop = walk(t->left, path, buf, spine_redex, visit, prune, clean);
      path.pop_back();
      break;
    case TermKind::App: {
      const std::size_t buf_mark = buf.size();
      Spine s = spine_into(t, buf);
      const std::size_t mark = path.size();
      if (long depth = spine_redex(s); depth >= 0) {
        push_fun(path, static_cast<std::size_t>(depth));
        stop = visit(path);
        path.resize(mark);
      }
      if (!stop && s.head->kind == TermKind::Abs) {
        push_fun(path, s.n);
        path.push_back(Step::Body);
        stop = walk(s.head->left, path, buf, spine_redex, visit, prune, clean);
        path.resize(mark);
      }
      for (std::size_t i = 0; !stop && i < s.n; ++i) {
        push_fun(path, s.n - 1 - i);
        path.push_back(Step::Arg);
        stop = walk(s.handle(i), path, buf, spine_redex, visit, prune, clean);
        path.resize(mark);
      }
      buf.resize(buf_mark);
      break;
    }
  }
  if (!stop) clean(h);
  return stop;
}

long beta_spine_redex(const Spine& s) {
  if (s.n > 0 && (s.head->kind == TermKind::Abs || s.head->kind == TermKind::Code)) {
    return static_cast<long>(s.n) - 1;
  }
  return -1;
}

long f_spine_redex(const Spine& s, const FSignature& sig) {
  if (s.head->kind != TermKind::Const) return -1;
  const FFunction* f = sig.find(s.head->name);
  if (f == nullptr || f->arity() > s.n) return -1;
  for (std::size_t i = 0; i < f->arity(); ++i) {
    NodePtr a = s.arg(i);
    if (a->kind != TermKind::Code || a->value->sort() != f->arg_sorts[i]) return -1;
  }
  return static_cast<long>(s.n - f->arity());
}

auto no_clean = [](const Handle&) {};
auto no_beta = [](NodePtr t) { return !t->has_beta; };
auto no_consts = [](NodePtr t) { return !t->has_const; };

std::optional<Address> first_redex(const Term& t, const FSignature* sig, FCleanMemo* memo) {
  Address path;
  std::vector<const Handle*> buf;
  std::optional<Address> found;
  auto stop_at = [&](const Address& p) {
    found = p;
    return true;
  };
  if (sig == nullptr) {
    walk(t.node(), path, buf, beta_spine_redex, stop_at, no_beta, no_clean);
  } else if (memo == nullptr) {
    walk(t.node(), path, buf, [&](const Spine& s) { return f_spine_redex(s, *sig); }, stop_at, no_consts,
         no_clean);
  } else {
    walk(t.node(), path, buf, [&](const Spine& s) { return f_spine_redex(s, *sig); }, stop_at,
         [&](NodePtr n) { return !n->has_const || memo->clean.contains(n); },
         [&](const Handle& n) {
           if (n->has_const) memo->clean.emplace(n.get(), n);
         });
  }
  return found;
}

}  // namespace

void Trace::append(const Trace& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  beta_count += other.beta_count;
  f_count += other.f_count;
}

bool is_beta_redex(const Term& t) {
  return t.is_app() && (t.fun().is_abs() || t.fun().is_code());
}

Term beta_step(const Term& t, const Address& at) {
  Term r = subterm(t, at);
  if (!is_beta_redex(r)) throw NotARedex("no beta-redex at " + address_to_string(at));
  return replace_at(t, at, contract(r));
}

std::optional<Address> leftmost_redex(const Term& t) { return first_redex(t, nullptr, nullptr); }

std::vector<Address> beta_redexes(const Term& t) {
  Address path;
  std::vector<const Handle*> buf;
  std::vector<Address> all;
  walk(t.node(), path, buf, beta_spine_redex,
       [&](const Address& p) {
         all.push_back(p);
         return false;
       },
       no_beta, no_clean);
  return all;
}

bool is_beta_normal(const Term& t) { return !leftmost_redex(t).has_value(); }

ReduceResult reduce_leftmost(const Term& t, std::uint64_t max_steps, TraceMode mode) {
  return detail::drive(t, nullptr, max_steps, mode);
}

// ---- F-calculus pieces that share the walker ----

bool is_f_redex(const Term& t, const FSignature& sig) {
  std::vector<const Handle*> buf;
  return f_spine_redex(spine_into(t.node().get(), buf), sig) == 0;
}

std::vector<Address> f_redexes(const Term& t, const FSignature& sig) {
  Address path;
  std::vector<const Handle*> buf;
  std::vector<Address> all;
  walk(t.node(), path, buf, [&](const Spine& s) { return f_spine_redex(s, sig); },
       [&](const Address& p) {
         all.push_back(p);
         return false;
       },
       no_consts, no_clean);
  return all;
}

std::optional<Address> leftmost_f_redex(const Term& t, const FSignature& sig) { return first_redex(t, &sig, nullptr); }

Term f_step(const Term& t, const Address& at, const FSignature& sig) {
  Term r = subterm(t, at);
  if (!is_f_redex(r, sig)) throw NotARedex("no F-redex at " + address_to_string(at));
  std::vector<const Handle*> buf;
  Spine s = spine_into(r.node().get(), buf);
  const FFunction* f = sig.find(s.head->name);
  std::vector<Value> args;
  args.reserve(s.n);
  for (std::size_t i = 0; i < s.n; ++i) args.push_back(*s.arg(i)->value);
  std::optional<Value> out = f->fn(args);
  if (!out) {
    std::string what = "#" + f->name;
    for (const auto& a : args) what += " [" + a.to_string() + "]";
    throw UndefinedApplication(what + " is undefined");
  }
  return replace_at(t, at, Term::code(std::move(*out)));
}

ReduceResult reduce_leftmost_f(const Term& t, const FSignature& sig, std::uint64_t max_steps,
                               TraceMode mode) {
  return detail::drive(t, &sig, max_steps, mode);
}

bool is_normal(const Term& t, const FSignature& sig) {
  return !leftmost_f_redex(t, sig) && !leftmost_redex(t);
}

namespace detail {

ReduceResult drive(const Term& t, const FSignature* sig, std::uint64_t max_steps, TraceMode mode) {
  ReduceResult res;
  res.term = t;
  FCleanMemo memo;
  for (;;) {
    std::optional<Address> at;
    RedexKind kind = RedexKind::Beta;
    if (sig != nullptr) {
      at = first_redex(res.term, sig, &memo);
      if (at) kind = RedexKind::F;
    }
    if (!at) at = first_redex(res.term, nullptr, nullptr);
    if (!at) {
      res.status = ReduceStatus::Normal;
      return res;
    }
    if (res.trace.length() >= max_steps) {
      res.status = ReduceStatus::BudgetExhausted;
      return res;
    }
    if (kind == RedexKind::F) {
      try {
        res.term = f_step(res.term, *at, *sig);
      } catch (const UndefinedApplication&) {
        res.status = ReduceStatus::Undefined;
        res.undefined_at = *at;
        return res;
      }
      ++res.trace.f_count;
    } else {
      res.term = replace_at(res.term, *at, contract(subterm(res.term, *at)));
      ++res.trace.beta_count;
    }
    res.trace.steps.push_back(
        TraceStep{kind, std::move(*at), mode == TraceMode::Full ? res.term : Term{}});
  }
}

}  // namespace detail
}  // namespace asmlc::lambda

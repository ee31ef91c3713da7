#include "asmlc/combinators.hpp"

#include <algorithm>

#include "asmlc/encodings.hpp"
#include "asmlc/good_terms.hpp"
#include "asmlc/lambda/reduce.hpp"

namespace asmlc::comb {
namespace {

Term v(const std::string& name) { return Term::var(name); }

// Case_n over n rows, Curry step, G's binders, and the smallest F-free pad.
int structural_k_min(std::size_t k, std::size_t n) {
  return static_cast<int>(1 + 3 + (k + 1) + (4 * n + 1));
}

std::string fresh_binder(const std::vector<std::string>& slots) {
  std::string name = "self";
  while (std::find(slots.begin(), slots.end(), name) != slots.end()) name += "'";
  return name;
}

Term prepare(const Term& t, const std::vector<std::string>& slots, const FSignature& sig,
             const char* what) {
  if (!t.valid()) throw Error(std::string(what) + " is missing");
  if (!good::is_good(t, sig)) throw Error(std::string(what) + " is not a good term: " + t.to_string());
  for (const auto& x : t.free_vars()) {
    if (std::find(slots.begin(), slots.end(), x) == slots.end()) {
      throw Error(std::string(what) + " uses unknown slot " + x);
    }
  }
  return good::fold(t, sig);
}

struct Prepared {
  std::vector<Term> guards;
  std::vector<Term> bodies;  // without the self binder applied
  std::size_t consts = 0;
};

Term assemble(const std::vector<std::string>& slots, const Prepared& p, const std::string& self,
              int pad_k, int pad_l) {
  std::vector<Term> case_args = p.bodies;
  case_args.insert(case_args.end(), p.guards.begin(), p.guards.end());
  Term h = Term::apps(enc::case_n(static_cast<int>(p.guards.size())), case_args);
  std::vector<std::string> binders{self};
  binders.insert(binders.end(), slots.begin(), slots.end());
  Term g = Term::abs(binders, h);
  Term f = Term::app(pad({pad_k, pad_l, "not", Value::boolean(true), true}), g);
  return curry_fixpoint(f);
}

}  // namespace

Term curry_fixpoint(const Term& f) {
  std::string x = "x";
  while (f.has_free(x)) x += "'";
  Term w = Term::abs(x, Term::app(f, Term::app(v(x), v(x))));
  return Term::app(w, w);
}

Term pad(const PadSpec& spec) {
  if (spec.L < 0) throw Error("pad: L must be >= 0");
  const int min_k = spec.f_free ? 3 : 2;
  if (spec.K < min_k) throw Error("pad: K must be >= " + std::to_string(min_k));
  const Term drop = Term::abs(std::vector<std::string>{"x", "y"}, v("y"));
  auto omegas = [&](Term t) {
    for (int j = 0; j < spec.L; ++j) t = Term::app(Term::constant(spec.omega), t);
    return t;
  };
  if (!spec.f_free) {
    return Term::app(enc::iterate_identity(spec.K - 2, drop), omegas(Term::code(spec.nu)));
  }
  Term inner = Term::app(enc::iterate_identity(spec.K - 3, drop), omegas(v("z")));
  return Term::app(Term::abs("z", inner), Term::code(spec.nu));
}

Term apply_slots(const Term& theta, const std::vector<Value>& slots) {
  Term t = theta;
  for (const auto& s : slots) t = Term::app(t, Term::code(s));
  return t;
}

std::optional<std::vector<Value>> match_round(const Term& t, const Term& theta, std::size_t k) {
  std::vector<Value> vals(k);
  Term cur = t;
  for (std::size_t j = k; j-- > 0;) {
    if (!cur.is_app() || !cur.arg().is_code()) return std::nullopt;
    vals[j] = cur.arg().value();
    cur = cur.fun();
  }
  if (!cur.is_app() || !(cur == theta)) return std::nullopt;
  return vals;
}

RoundCost measure_round(const Term& start, const Term& theta, std::size_t k, const FSignature& sig,
                        std::uint64_t budget) {
  RoundCost rc;
  Term cur = start;
  for (std::uint64_t n = 0; n < budget; ++n) {
    auto r = lambda::reduce_leftmost_f(cur, sig, 1, lambda::TraceMode::CountsOnly);
    if (r.status == lambda::ReduceStatus::Undefined) {
      throw Error("round hit an undefined static application");
    }
    if (r.trace.length() == 0) {
      if (cur.is_code()) {
        rc.result = cur;
        rc.exited = true;
        return rc;
      }
      throw Error("round ended in a normal form that is not a code: " + cur.to_string());
    }
    rc.beta += r.trace.beta_count;
    rc.f += r.trace.f_count;
    cur = r.term;
    if (match_round(cur, theta, k)) {
      rc.result = cur;
      return rc;
    }
  }
  throw Error("round did not finish within the step budget");
}

CompiledCombinator build_conditional_combinator(const CombinatorSpec& spec, const FSignature& sig) {
  if (spec.branches.empty()) throw Error("combinator needs at least one branch");
  const std::size_t k = spec.slots.size();
  const std::string self = fresh_binder(spec.slots);

  Prepared p;
  CompiledCombinator cc;
  for (const auto& b : spec.branches) {
    p.guards.push_back(prepare(b.guard, spec.slots, sig, "guard"));
    if (b.exit) {
      p.bodies.push_back(prepare(b.result, spec.slots, sig, "exit"));
      cc.gamma.push_back(p.bodies.back());
    } else {
      if (b.updates.size() != k) throw Error("update row has the wrong number of slots");
      std::vector<Term> ups;
      for (const auto& u : b.updates) ups.push_back(prepare(u, spec.slots, sig, "update"));
      cc.phi.insert(cc.phi.end(), ups.begin(), ups.end());
      p.bodies.push_back(Term::apps(v(self), ups));
    }
  }
  cc.rho = p.guards;
  // Every guard and body is evaluated in each round, whichever row fires.
  for (const auto& g : p.guards) p.consts += good::const_nodes(g);
  for (const auto& b : p.bodies) p.consts += good::const_nodes(b);

  cc.k = k;
  cc.branch_count = p.guards.size();
  cc.K_min = structural_k_min(k, p.guards.size());
  cc.L_min = static_cast<int>(p.consts);

  if (!spec.probes.empty()) {
    const Term min_theta = assemble(spec.slots, p, self, 3, 0);
    for (const auto& probe : spec.probes) {
      if (probe.size() != k) throw Error("probe has the wrong number of slots");
      RoundCost rc = measure_round(apply_slots(min_theta, probe), min_theta, k, sig);
      if (rc.beta != static_cast<std::uint64_t>(cc.K_min) ||
          rc.f != static_cast<std::uint64_t>(cc.L_min)) {
        throw Error("probe measured (" + std::to_string(rc.beta) + "," + std::to_string(rc.f) +
                    "), construction gives (" + std::to_string(cc.K_min) + "," +
                    std::to_string(cc.L_min) + ")");
      }
    }
  }

  cc.K = spec.K.value_or(cc.K_min);
  cc.L = spec.L.value_or(cc.L_min);
  if (cc.K < cc.K_min) {
    throw Error("K = " + std::to_string(cc.K) + " is below the minimum " + std::to_string(cc.K_min));
  }
  if (cc.L < cc.L_min) {
    throw Error("L = " + std::to_string(cc.L) + " is below the minimum " + std::to_string(cc.L_min));
  }
  cc.theta = assemble(spec.slots, p, self, 3 + cc.K - cc.K_min, cc.L - cc.L_min);
  return cc;
}

CompiledCombinator build_update_combinator(const std::vector<std::string>& slots,
                                           const std::vector<Term>& updates, const FSignature& sig,
                                           std::optional<int> K, std::optional<int> L) {
  CombinatorSpec spec;
  spec.slots = slots;
  spec.branches.push_back(Branch{Term::code(Value::boolean(true)), false, updates, {}});
  spec.K = K;
  spec.L = L;
  return build_conditional_combinator(spec, sig);
}

}  // namespace asmlc::comb

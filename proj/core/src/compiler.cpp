#include "asmlc/compiler.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "asmlc/good_terms.hpp"

namespace asmlc::compiler {
namespace {

using lambda::DeltaType;

const Term& truth() {
  static const Term t = Term::code(Value::boolean(true));
  return t;
}
const Term& falsity() {
  static const Term t = Term::code(Value::boolean(false));
  return t;
}

bool is_code_bool(const Term& t, bool b) {
  return t.is_code() && t.value().is_bool() && t.value().as_bool() == b;
}

Term call(const std::string& f, std::vector<Term> args) {
  return Term::apps(Term::constant(f), args);
}

Term and2(const Term& a, const Term& b) {
  if (is_code_bool(a, false) || is_code_bool(b, false)) return falsity();
  if (is_code_bool(a, true)) return b;
  if (is_code_bool(b, true)) return a;
  return call("and", {a, b});
}

Term or2(const Term& a, const Term& b) {
  if (is_code_bool(a, true) || is_code_bool(b, true)) return truth();
  if (is_code_bool(a, false)) return b;
  if (is_code_bool(b, false)) return a;
  return call("or", {a, b});
}

Term not1(const Term& a) {
  if (a.is_code() && a.value().is_bool()) return Term::code(Value::boolean(!a.value().as_bool()));
  return call("not", {a});
}

std::string tot_name(const std::string& f) { return f + "__tot"; }
std::string def_name(const std::string& f) { return f + "__def"; }
const char* kExitTuple = "exit__tuple";

Value exit_code(std::uint64_t n) { return Value::nat(n, kExitSort); }

// Value term and definedness term of an ASM term; the value term is total.
struct VD {
  Term v;
  Term d;
};

class Translator {
 public:
  Translator(const Machine& m, FSignature& sig, const std::vector<Slot>& slots)
      : m_(m), sig_(sig), slots_(slots) {
    for (std::size_t j = 0; j < slots.size(); ++j) slot_of_[slots[j].symbol] = j;
  }

  VD term(const Expr& e, const std::vector<VD>& params = {}) {
    if (e.is_var()) return params.at(e.index);
    const Symbol& s = m_.vocab.symbol(e.name);
    std::vector<VD> args;
    for (const auto& a : e.args) args.push_back(term(a, params));
    Term d = truth();
    std::vector<Term> vs;
    for (const auto& a : args) {
      d = and2(d, a.d);
      vs.push_back(a.v);
    }
    if (s.is_dynamic() || s.input) {
      const Slot& slot = slots_[slot_of_.at(s.name)];
      Term x = Term::var(slot.variable);
      if (slot.kind != Slot::Kind::Delta) return {x, d};
      return select(s, *slot.delta, x, args, d);
    }
    if (s.total) return {call(s.name, vs), d};
    totalize(s.name);
    return {call(tot_name(s.name), vs), and2(d, call(def_name(s.name), vs))};
  }

  // Function symbol whose value is the fn of `name` where defined and an
  // arbitrary carrier element elsewhere, plus its domain predicate.
  void totalize(const std::string& name) {
    if (sig_.contains(tot_name(name))) return;
    const lambda::FFunction* f = sig_.find(name);
    if (f == nullptr) throw CompileError("no semantics for static " + name);
    const auto& carrier = m_.vocab.sort(f->result_sort).carrier;
    if (carrier.empty()) throw CompileError("sort " + f->result_sort + " is empty");
    Value fallback = carrier.front();
    lambda::SemanticFn fn = f->fn;
    sig_.add({tot_name(name), f->arg_sorts, f->result_sort,
              [fn, fallback](std::span<const Value> a) -> std::optional<Value> {
                auto r = fn(a);
                return r ? *r : fallback;
              }});
    sig_.add({def_name(name), f->arg_sorts, "Bool",
              [fn](std::span<const Value> a) -> std::optional<Value> { return Value::boolean(fn(a).has_value()); }});
  }

  VD select(const Symbol& s, const DeltaType& type, const Term& delta, const std::vector<VD>& args,
            const Term& d_args) {
    std::vector<Term> keyed{delta};
    for (const auto& a : args) keyed.push_back(a.v);
    Term present = call(type.name("B"), keyed);
    totalize(type.name("V"));
    Term stored = call(tot_name(type.name("V")), keyed);
    std::vector<VD> params;
    for (const auto& a : args) params.push_back({a.v, truth()});
    VD init = term(m_.init.at(s.name).term, params);
    Term v = call("ite_" + s.result_sort, {present, stored, init.v});
    return {v, and2(d_args, or2(present, init.d))};
  }

  Term guard(const Guard& g) {
    switch (g.kind) {
      case Guard::Kind::True:
        return truth();
      case Guard::Kind::Atom: {
        VD c = term(g.term);
        return and2(c.d, g.want ? c.v : not1(c.v));
      }
      case Guard::Kind::Not:
        return not1(guard(g.parts.at(0)));
      case Guard::Kind::And: {
        Term t = truth();
        for (const auto& p : g.parts) t = and2(t, guard(p));
        return t;
      }
    }
    return truth();
  }

 private:
  const Machine& m_;
  FSignature& sig_;
  const std::vector<Slot>& slots_;
  std::map<std::string, std::size_t> slot_of_;
};

void collect_inputs(const Vocabulary& vocab, const Expr& e, std::set<std::string>& out) {
  if (e.is_var()) return;
  const Symbol* s = vocab.find_symbol(e.name);
  if (s != nullptr && s->input) out.insert(s->name);
  for (const auto& a : e.args) collect_inputs(vocab, a, out);
}

void collect_inputs(const Vocabulary& vocab, const GuardedProgram& g, std::set<std::string>& out) {
  auto guard = [&](auto&& self, const Guard& gd) -> void {
    if (gd.kind == Guard::Kind::Atom) collect_inputs(vocab, gd.term, out);
    for (const auto& p : gd.parts) self(self, p);
  };
  for (const auto& c : g.clauses) {
    guard(guard, c.guard);
    for (const auto& i : c.instrs) {
      if (i.kind != Instr::Kind::Update) continue;
      for (const auto& a : i.update.args) collect_inputs(vocab, a, out);
      collect_inputs(vocab, i.update.rhs, out);
    }
  }
}

std::vector<Slot> plan_slots(const Machine& m, const GuardedProgram& g, Pathway pathway) {
  std::vector<Slot> slots;
  std::set<std::string> inputs;
  collect_inputs(m.vocab, g, inputs);
  for (const auto* d : m.vocab.dynamics()) {
    Slot s;
    s.symbol = d->name;
    s.variable = good::slot_variable(d->name);
    if (d->arity() == 0) {
      s.kind = Slot::Kind::Value;
      s.sort = d->result_sort;
    } else {
      if (pathway == Pathway::Type0) {
        throw CompileError("dynamic symbol " + d->name + " has arity " + std::to_string(d->arity()) +
                           "; type-0 compilation needs constants only");
      }
      s.kind = Slot::Kind::Delta;
      s.delta = DeltaType{d->arg_sorts, d->result_sort};
      s.sort = s.delta->list_sort();
      collect_inputs(m.vocab, m.init.at(d->name).term, inputs);
    }
    slots.push_back(std::move(s));
  }
  for (const auto* in : m.vocab.inputs()) {
    if (inputs.count(in->name) == 0) continue;
    slots.push_back({Slot::Kind::Input, in->name, good::slot_variable(in->name), in->result_sort, {}});
  }
  return slots;
}

// Deterministic spread of slot valuations for measuring the minimum.
std::vector<std::vector<Value>> probes(const Machine& m, const std::vector<Slot>& slots) {
  std::vector<std::vector<Value>> out;
  for (std::size_t p = 0; p < 3; ++p) {
    std::vector<Value> row;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (slots[j].kind == Slot::Kind::Delta) {
        row.push_back(Value::seq({}, slots[j].sort));
        continue;
      }
      const auto& carrier = m.vocab.sort(slots[j].sort).carrier;
      row.push_back(carrier[(p * 7 + j * 3) % carrier.size()]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

CompiledMachine build(const Machine& m, Pathway pathway, const CompileOptions& opts) {
  validate(m);
  CompiledMachine cm;
  cm.machine = m;
  cm.pathway = pathway;
  cm.program = normalize(m.program);
  cm.slots = plan_slots(m, cm.program, pathway);

  for (const auto& s : m.vocab.symbols()) {
    if (s.name.find("__") != std::string::npos) {
      throw CompileError("symbol names containing `__` are reserved: " + s.name);
    }
  }
  cm.sig = good::signature_of(m.vocab);
  for (const auto& s : cm.slots) {
    if (s.delta) lambda::add_delta_constants(cm.sig, *s.delta);
  }
  std::vector<std::string> out_sorts;
  for (std::size_t j = 0; j < cm.slots.size(); ++j) {
    const Symbol& sym = m.vocab.symbol(cm.slots[j].symbol);
    if (sym.output) {
      cm.output_slots.push_back(j);
      out_sorts.push_back(cm.slots[j].sort);
    }
  }
  cm.sig.add({kExitTuple, out_sorts, kExitSort, [](std::span<const Value> a) -> std::optional<Value> {
                std::vector<Value> items{exit_code(1)};
                items.insert(items.end(), a.begin(), a.end());
                return Value::tuple(std::move(items), kExitSort);
              }});

  Translator tr(m, cm.sig, cm.slots);
  std::vector<std::string> vars;
  for (const auto& s : cm.slots) vars.push_back(s.variable);
  std::map<std::string, std::size_t> slot_of;
  for (std::size_t j = 0; j < cm.slots.size(); ++j) slot_of[cm.slots[j].symbol] = j;

  Term fail_g = falsity();
  Term clash_g = falsity();
  Term halt_g = falsity();
  Term some_update = falsity();
  std::vector<comb::Branch> updates;
  for (std::size_t i = 0; i < cm.program.clauses.size(); ++i) {
    const Clause& c = cm.program.clauses[i];
    Term t = tr.guard(c.guard);
    bool has_fail = false;
    bool has_halt = false;
    std::vector<const UpdateInstr*> ups;
    for (const auto& ins : c.instrs) {
      if (ins.kind == Instr::Kind::Fail) has_fail = true;
      if (ins.kind == Instr::Kind::Halt) has_halt = true;
      if (ins.kind == Instr::Kind::Update) ups.push_back(&ins.update);
    }

    Term defined = truth();
    std::vector<std::vector<VD>> args(ups.size());
    std::vector<VD> rhs;
    for (std::size_t u = 0; u < ups.size(); ++u) {
      for (const auto& a : ups[u]->args) {
        args[u].push_back(tr.term(a));
        defined = and2(defined, args[u].back().d);
      }
      rhs.push_back(tr.term(ups[u]->rhs));
      defined = and2(defined, rhs.back().d);
    }
    fail_g = or2(fail_g, and2(t, has_fail ? truth() : not1(defined)));

    Term clash = falsity();
    for (std::size_t u = 0; u < ups.size(); ++u) {
      for (std::size_t w = u + 1; w < ups.size(); ++w) {
        if (ups[u]->symbol != ups[w]->symbol) continue;
        const Symbol& sym = m.vocab.symbol(ups[u]->symbol);
        Term same = truth();
        for (std::size_t a = 0; a < sym.arity(); ++a) {
          same = and2(same, call("eq_" + sym.arg_sorts[a], {args[u][a].v, args[w][a].v}));
        }
        clash = or2(clash, and2(same, not1(call("eq_" + sym.result_sort, {rhs[u].v, rhs[w].v}))));
      }
    }
    clash_g = or2(clash_g, and2(t, clash));

    if (has_halt) halt_g = or2(halt_g, t);
    if (ups.empty() || has_halt || has_fail) continue;
    some_update = or2(some_update, t);

    std::vector<Term> phi;
    for (const auto& s : cm.slots) phi.push_back(Term::var(s.variable));
    std::vector<bool> written(cm.slots.size(), false);
    for (std::size_t u = 0; u < ups.size(); ++u) {
      const std::size_t j = slot_of.at(ups[u]->symbol);
      const Slot& slot = cm.slots[j];
      if (slot.kind == Slot::Kind::Value) {
        // Clash-free rounds assign one value; the first update carries it.
        if (!written[j]) phi[j] = rhs[u].v;
        written[j] = true;
        continue;
      }
      const DeltaType& type = *slot.delta;
      std::vector<Term> keyed{Term::var(slot.variable)};
      std::vector<Term> key;
      for (const auto& a : args[u]) key.push_back(a.v);
      keyed.insert(keyed.end(), key.begin(), key.end());
      tr.totalize(type.name("V"));
      std::vector<Term> old_entry = key;
      old_entry.push_back(call(tot_name(type.name("V")), keyed));
      std::vector<Term> new_entry = key;
      new_entry.push_back(rhs[u].v);
      Term removed = call(type.name("Del"), {phi[j], call(type.name("Tup"), old_entry)});
      phi[j] = call(type.name("Add"), {removed, call(type.name("Tup"), new_entry)});
    }
    updates.push_back({t, false, phi, {}});
    cm.branch_labels.push_back("update " + std::to_string(i + 1) + ": " + c.guard.to_string());
  }
  halt_g = or2(halt_g, not1(some_update));

  std::vector<Term> outs;
  for (std::size_t j : cm.output_slots) outs.push_back(Term::var(cm.slots[j].variable));

  comb::CombinatorSpec spec;
  spec.slots = vars;
  spec.branches.push_back({fail_g, true, {}, Term::code(exit_code(2))});
  spec.branches.push_back({clash_g, true, {}, Term::code(exit_code(3))});
  spec.branches.push_back({halt_g, true, {}, call(kExitTuple, outs)});
  cm.branch_labels.insert(cm.branch_labels.begin(), {"fail", "clash", "halt"});
  spec.branches.insert(spec.branches.end(), updates.begin(), updates.end());
  spec.probes = probes(m, cm.slots);

  // Minimum first, then the requested counts on top of it.
  comb::CompiledCombinator minimum = comb::build_conditional_combinator(spec, cm.sig);
  spec.probes.clear();
  spec.K = opts.K.value_or(minimum.K_min + opts.headroom_K);
  spec.L = opts.L.value_or(minimum.L_min + opts.headroom_L);
  if (*spec.K == minimum.K && *spec.L == minimum.L) {
    cm.comb = std::move(minimum);
  } else {
    cm.comb = comb::build_conditional_combinator(spec, cm.sig);
  }
  return cm;
}

}  // namespace

CompiledMachine compile_type0(const Machine& m, const CompileOptions& opts) {
  return build(m, Pathway::Type0, opts);
}

CompiledMachine compile_general(const Machine& m, const CompileOptions& opts) {
  return build(m, Pathway::General, opts);
}

CompiledMachine compile(const Machine& m, const CompileOptions& opts) {
  for (const auto* d : m.vocab.dynamics()) {
    if (d->arity() != 0) return compile_general(m, opts);
  }
  return compile_type0(m, opts);
}

std::vector<Value> initial_slots(const CompiledMachine& cm, const State& s0) {
  std::vector<Value> out;
  for (const auto& s : cm.slots) {
    switch (s.kind) {
      case Slot::Kind::Value: {
        const Value* v = s0.lookup(s.symbol, {});
        if (v == nullptr) throw Error("initial value of " + s.symbol + " is undefined");
        out.push_back(*v);
        break;
      }
      case Slot::Kind::Delta:
        out.push_back(Value::seq({}, s.sort));
        break;
      case Slot::Kind::Input:
        out.push_back(s0.inputs.at(s.symbol));
        break;
    }
  }
  return out;
}

Term start_term(const CompiledMachine& cm, const State& s0) {
  return comb::apply_slots(cm.theta(), initial_slots(cm, s0));
}

Table slot_table(const CompiledMachine& cm, std::size_t j, const Value& code, const State& s0) {
  const Slot& s = cm.slots.at(j);
  if (s.kind != Slot::Kind::Delta) return Table{{Tuple{}, code}};
  Table t = s0.dynamic.at(s.symbol);
  for (auto& [key, v] : lambda::delta_entries(code)) t[key] = v;
  return t;
}

Decoded decode_result(const Term& t, const CompiledMachine& cm) {
  Decoded d;
  if (auto slots = comb::match_round(t, cm.theta(), cm.k())) {
    d.kind = Decoded::Kind::Running;
    d.slots = std::move(*slots);
    return d;
  }
  if (t.is_code() && t.value().sort() == kExitSort) {
    const Value& v = t.value();
    if (v.kind() == Value::Kind::Nat && v.as_nat() == 2) {
      d.kind = Decoded::Kind::Fail;
      return d;
    }
    if (v.kind() == Value::Kind::Nat && v.as_nat() == 3) {
      d.kind = Decoded::Kind::Clash;
      return d;
    }
    if (v.kind() == Value::Kind::Tuple && !v.items().empty() && v.items().front() == exit_code(1) &&
        v.items().size() == cm.output_slots.size() + 1) {
      d.kind = Decoded::Kind::Success;
      d.outputs.assign(v.items().begin() + 1, v.items().end());
      return d;
    }
  }
  throw Error("unrecognized term shape: " + t.to_string().substr(0, 200));
}

std::string decoded_kind_name(Decoded::Kind k) {
  switch (k) {
    case Decoded::Kind::Running: return "running";
    case Decoded::Kind::Success: return "success";
    case Decoded::Kind::Fail: return "fail";
    case Decoded::Kind::Clash: return "clash";
  }
  return "?";
}

std::string manifest(const CompiledMachine& cm) {
  std::ostringstream out;
  out << "machine: " << cm.machine.name << "\n";
  out << "pathway: " << (cm.pathway == Pathway::Type0 ? "type0" : "general") << "\n";
  for (std::size_t j = 0; j < cm.slots.size(); ++j) {
    const Slot& s = cm.slots[j];
    const char* kind = s.kind == Slot::Kind::Value ? "value" : s.kind == Slot::Kind::Delta ? "delta" : "input";
    out << "slot " << j + 1 << ": " << s.symbol << " " << kind << " " << s.sort << " " << s.variable << "\n";
  }
  out << "branches: " << cm.comb.branch_count << "\n";
  for (std::size_t i = 0; i < cm.branch_labels.size(); ++i) {
    out << "branch " << i + 1 << ": " << cm.branch_labels[i] << "\n";
  }
  out << "K: " << cm.K() << "\n";
  out << "L: " << cm.L() << "\n";
  out << "K_min: " << cm.comb.K_min << "\n";
  out << "L_min: " << cm.comb.L_min << "\n";
  out << "K_total: " << cm.K() + cm.L() << "\n";
  out << "exit success: <1";
  for (std::size_t j : cm.output_slots) out << ", " << cm.slots[j].symbol;
  out << ">\n";
  out << "exit fail: 2\n";
  out << "exit clash: 3\n";
  out << "theta size: " << cm.theta().size() << "\n";
  out << "theta: " << cm.theta().to_string() << "\n";
  return out.str();
}

}  // namespace asmlc::compiler

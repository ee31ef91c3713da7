#include "asmlc/machine.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace asmlc {

bool Sort::contains(const Value& v) const {
  return std::find(carrier.begin(), carrier.end(), v) != carrier.end();
}

// ---- vocabulary ----

namespace {

Symbol auto_static(std::string name, std::vector<std::string> args, std::string result,
                   lambda::SemanticFn fn) {
  Symbol s;
  s.name = std::move(name);
  s.kind = SymbolKind::Static;
  s.arg_sorts = std::move(args);
  s.result_sort = std::move(result);
  s.fn = std::move(fn);
  return s;
}

std::optional<Value> in_carrier(const Sort& s, Value v) {
  if (!s.contains(v)) return std::nullopt;
  return v;
}

}  // namespace

Vocabulary::Vocabulary() {
  add_sort({"Bool", {Value::boolean(true), Value::boolean(false)}});
  auto konst = [](bool b) {
    return [b](std::span<const Value>) -> std::optional<Value> { return Value::boolean(b); };
  };
  auto bin = [](auto op) {
    return [op](std::span<const Value> a) -> std::optional<Value> {
      return Value::boolean(op(a[0].as_bool(), a[1].as_bool()));
    };
  };
  add_symbol(auto_static("True", {}, "Bool", konst(true)));
  add_symbol(auto_static("False", {}, "Bool", konst(false)));
  add_symbol(auto_static("not", {"Bool"}, "Bool", [](std::span<const Value> a) -> std::optional<Value> {
    return Value::boolean(!a[0].as_bool());
  }));
  add_symbol(auto_static("and", {"Bool", "Bool"}, "Bool", bin([](bool x, bool y) { return x && y; })));
  add_symbol(auto_static("or", {"Bool", "Bool"}, "Bool", bin([](bool x, bool y) { return x || y; })));
}

void Vocabulary::add_sort(Sort s) {
  if (sort_index_.count(s.name) != 0) throw SortError("duplicate sort " + s.name);
  const std::string name = s.name;
  sort_index_[name] = sorts_.size();
  sorts_.push_back(std::move(s));
  add_symbol(auto_static("eq_" + name, {name, name}, "Bool",
                         [](std::span<const Value> a) -> std::optional<Value> {
                           return Value::boolean(a[0] == a[1]);
                         }));
  add_symbol(auto_static("ite_" + name, {"Bool", name, name}, name,
                         [](std::span<const Value> a) -> std::optional<Value> {
                           return a[0].as_bool() ? a[1] : a[2];
                         }));
}

void Vocabulary::add_symbol(Symbol s) {
  if (symbol_index_.count(s.name) != 0) throw SortError("duplicate symbol " + s.name);
  for (const auto& a : s.arg_sorts) {
    if (find_sort(a) == nullptr) throw SortError("unknown sort " + a + " in profile of " + s.name);
  }
  if (find_sort(s.result_sort) == nullptr) {
    throw SortError("unknown sort " + s.result_sort + " in profile of " + s.name);
  }
  if (s.input && (s.is_dynamic() || s.arity() != 0)) {
    throw SortError("input " + s.name + " must be a static constant");
  }
  if (s.output && s.is_static()) throw SortError("output " + s.name + " must be dynamic");
  if (s.is_static() && !s.input && !s.fn) throw SortError("static " + s.name + " has no semantics");
  symbol_index_[s.name] = symbols_.size();
  symbols_.push_back(std::move(s));
}

const Sort* Vocabulary::find_sort(const std::string& name) const {
  auto it = sort_index_.find(name);
  return it == sort_index_.end() ? nullptr : &sorts_[it->second];
}

const Sort& Vocabulary::sort(const std::string& name) const {
  const Sort* s = find_sort(name);
  if (s == nullptr) throw SortError("unknown sort " + name);
  return *s;
}

const Symbol* Vocabulary::find_symbol(const std::string& name) const {
  auto it = symbol_index_.find(name);
  return it == symbol_index_.end() ? nullptr : &symbols_[it->second];
}

const Symbol& Vocabulary::symbol(const std::string& name) const {
  const Symbol* s = find_symbol(name);
  if (s == nullptr) throw SortError("unknown symbol " + name);
  return *s;
}

std::vector<const Symbol*> Vocabulary::dynamics() const {
  std::vector<const Symbol*> out;
  for (const auto& s : symbols_) {
    if (s.is_dynamic()) out.push_back(&s);
  }
  return out;
}

std::vector<const Symbol*> Vocabulary::inputs() const {
  std::vector<const Symbol*> out;
  for (const auto& s : symbols_) {
    if (s.input) out.push_back(&s);
  }
  return out;
}

std::vector<const Symbol*> Vocabulary::outputs() const {
  std::vector<const Symbol*> out;
  for (const auto& s : symbols_) {
    if (s.output) out.push_back(&s);
  }
  return out;
}

std::vector<Tuple> Vocabulary::tuples(const std::vector<std::string>& arg_sorts) const {
  std::vector<Tuple> out{Tuple{}};
  for (const auto& name : arg_sorts) {
    std::vector<Tuple> next;
    for (const auto& prefix : out) {
      for (const auto& v : sort(name).carrier) {
        Tuple t = prefix;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

Symbol builtin_symbol(const Vocabulary& vocab, std::string name, std::string builtin,
                      std::vector<std::string> arg_sorts, std::string result_sort) {
  const Sort& rs = vocab.sort(result_sort);
  const std::string rsn = result_sort;
  using Args = std::span<const Value>;
  lambda::SemanticFn fn;
  std::size_t arity = 2;
  bool total = false;
  auto nat_op = [&rs, rsn](auto op) {
    return [rs, rsn, op](Args a) -> std::optional<Value> {
      std::optional<std::uint64_t> r = op(a);
      if (!r) return std::nullopt;
      return in_carrier(rs, Value::nat(*r, rsn));
    };
  };
  if (builtin == "rem") {
    fn = nat_op([](Args a) -> std::optional<std::uint64_t> {
      if (a[1].as_nat() == 0) return std::nullopt;
      return a[0].as_nat() % a[1].as_nat();
    });
  } else if (builtin == "add") {
    fn = nat_op([](Args a) -> std::optional<std::uint64_t> { return a[0].as_nat() + a[1].as_nat(); });
  } else if (builtin == "sub") {
    fn = nat_op([](Args a) -> std::optional<std::uint64_t> {
      if (a[0].as_nat() < a[1].as_nat()) return std::nullopt;
      return a[0].as_nat() - a[1].as_nat();
    });
  } else if (builtin == "mul") {
    fn = nat_op([](Args a) -> std::optional<std::uint64_t> { return a[0].as_nat() * a[1].as_nat(); });
  } else if (builtin == "succ") {
    arity = 1;
    fn = nat_op([](Args a) -> std::optional<std::uint64_t> { return a[0].as_nat() + 1; });
  } else if (builtin == "pred") {
    arity = 1;
    fn = nat_op([](Args a) -> std::optional<std::uint64_t> {
      if (a[0].as_nat() == 0) return std::nullopt;
      return a[0].as_nat() - 1;
    });
  } else if (builtin == "lt" || builtin == "le") {
    if (result_sort != "Bool") throw SortError(name + ": " + builtin + " returns Bool");
    total = true;
    bool strict = builtin == "lt";
    fn = [strict](Args a) -> std::optional<Value> {
      return Value::boolean(strict ? a[0].as_nat() < a[1].as_nat() : a[0].as_nat() <= a[1].as_nat());
    };
  } else {
    throw SortError("unknown builtin " + builtin);
  }
  if (arg_sorts.size() != arity) {
    throw SortError(name + ": builtin " + builtin + " takes " + std::to_string(arity) + " arguments");
  }
  for (const auto& a : arg_sorts) {
    for (const auto& v : vocab.sort(a).carrier) {
      if (v.kind() != Value::Kind::Nat) throw SortError(name + ": builtin " + builtin + " needs numeric sorts");
    }
  }
  Symbol s = auto_static(std::move(name), std::move(arg_sorts), std::move(result_sort), std::move(fn));
  s.binding.kind = StaticBinding::Kind::Builtin;
  s.binding.builtin = std::move(builtin);
  if (!total) {
    // Decide totality by enumeration; carriers are small.
    total = true;
    for (const auto& t : vocab.tuples(s.arg_sorts)) {
      if (!s.fn(t)) {
        total = false;
        break;
      }
    }
  }
  s.total = total;
  return s;
}

Symbol literal_symbol(std::string name, const std::string& sort, Value v) {
  Symbol s = auto_static(std::move(name), {}, sort,
                         [v](std::span<const Value>) -> std::optional<Value> { return v; });
  s.binding.kind = StaticBinding::Kind::Literal;
  s.binding.literal = std::move(v);
  return s;
}

Symbol table_symbol(const Vocabulary& vocab, std::string name, std::vector<std::string> arg_sorts,
                    std::string result_sort, std::vector<std::pair<Tuple, Value>> table) {
  std::map<Tuple, Value> map;
  for (const auto& [k, v] : table) {
    if (k.size() != arg_sorts.size()) throw SortError(name + ": table key has wrong arity");
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (!vocab.sort(arg_sorts[i]).contains(k[i])) {
        throw SortError(name + ": " + k[i].to_string() + " is not in " + arg_sorts[i]);
      }
    }
    if (!vocab.sort(result_sort).contains(v)) {
      throw SortError(name + ": " + v.to_string() + " is not in " + result_sort);
    }
    if (!map.emplace(k, v).second) throw SortError(name + ": duplicate table key " + tuple_to_string(k));
  }
  const bool total = map.size() == vocab.tuples(arg_sorts).size();
  Symbol s = auto_static(std::move(name), std::move(arg_sorts), std::move(result_sort),
                         [map](std::span<const Value> a) -> std::optional<Value> {
                           auto it = map.find(Tuple(a.begin(), a.end()));
                           if (it == map.end()) return std::nullopt;
                           return it->second;
                         });
  s.binding.kind = StaticBinding::Kind::Table;
  s.binding.table = std::move(table);
  s.total = total;
  return s;
}

// ---- terms ----

Expr Expr::apply(std::string name, std::vector<Expr> args) {
  Expr e;
  e.kind = Kind::Apply;
  e.name = std::move(name);
  e.args = std::move(args);
  return e;
}

Expr Expr::var(std::string name, std::size_t index) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  e.index = index;
  return e;
}

std::size_t Expr::size() const {
  std::size_t n = 1;
  for (const auto& a : args) n += a.size();
  return n;
}

std::string Expr::to_string() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].to_string();
  }
  return out + ")";
}

std::string sort_of(const Vocabulary& vocab, const Expr& e, const std::vector<std::string>& var_sorts) {
  if (e.is_var()) {
    if (e.index >= var_sorts.size()) throw SortError("unbound parameter " + e.name);
    return var_sorts[e.index];
  }
  const Symbol* s = vocab.find_symbol(e.name);
  if (s == nullptr) throw SortError("unknown symbol " + e.name);
  if (s->arity() != e.args.size()) {
    throw SortError(e.name + " expects " + std::to_string(s->arity()) + " arguments, got " +
                    std::to_string(e.args.size()));
  }
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    std::string got = sort_of(vocab, e.args[i], var_sorts);
    if (got != s->arg_sorts[i]) {
      throw SortError("argument " + std::to_string(i + 1) + " of " + e.name + " has sort " + got +
                      ", expected " + s->arg_sorts[i]);
    }
  }
  return s->result_sort;
}

std::string UpdateInstr::to_string() const {
  return Expr::apply(symbol, args).to_string() + " := " + rhs.to_string();
}

// ---- programs ----

Program Program::skip() { return Program{}; }

Program Program::halt() {
  Program p;
  p.kind = Kind::Halt;
  return p;
}

Program Program::fail() {
  Program p;
  p.kind = Kind::Fail;
  return p;
}

Program Program::assign(std::string symbol, std::vector<Expr> args, Expr rhs) {
  Program p;
  p.kind = Kind::Update;
  p.update = {std::move(symbol), std::move(args), std::move(rhs)};
  return p;
}

Program Program::if_(Expr cond, Program then_p, Program else_p) {
  Program p;
  p.kind = Kind::If;
  p.cond = std::move(cond);
  p.children = {std::move(then_p), std::move(else_p)};
  return p;
}

Program Program::par(std::vector<Program> blocks) {
  Program p;
  p.kind = Kind::Par;
  p.children = std::move(blocks);
  return p;
}

std::size_t Program::size() const {
  std::size_t n = 1;
  switch (kind) {
    case Kind::Update:
      for (const auto& a : update.args) n += a.size();
      n += update.rhs.size();
      break;
    case Kind::If:
      n += cond.size();
      break;
    default:
      break;
  }
  for (const auto& c : children) n += c.size();
  return n;
}

const Value* State::lookup(const std::string& symbol, const Tuple& args) const {
  auto it = dynamic.find(symbol);
  if (it == dynamic.end()) return nullptr;
  auto jt = it->second.find(args);
  return jt == it->second.end() ? nullptr : &jt->second;
}

namespace {

bool uses_only_statics(const Vocabulary& vocab, const Expr& e) {
  if (e.is_var()) return true;
  if (!vocab.symbol(e.name).is_static()) return false;
  return std::all_of(e.args.begin(), e.args.end(), [&](const Expr& a) { return uses_only_statics(vocab, a); });
}

bool has_vars(const Expr& e) {
  if (e.is_var()) return true;
  return std::any_of(e.args.begin(), e.args.end(), has_vars);
}

void validate_program(const Vocabulary& vocab, const Program& p) {
  auto ground = [&](const Expr& e) {
    if (has_vars(e)) throw SortError("program term " + e.to_string() + " has parameters");
    return sort_of(vocab, e);
  };
  switch (p.kind) {
    case Program::Kind::Update: {
      const Symbol& s = vocab.symbol(p.update.symbol);
      if (!s.is_dynamic()) {
        throw SortError("left side of " + p.update.to_string() + " must be a dynamic symbol");
      }
      std::string lhs = ground(Expr::apply(p.update.symbol, p.update.args));
      std::string rhs = ground(p.update.rhs);
      if (lhs != rhs) throw SortError("sides of " + p.update.to_string() + " have sorts " + lhs + " and " + rhs);
      break;
    }
    case Program::Kind::If:
      if (ground(p.cond) != "Bool") throw SortError("condition " + p.cond.to_string() + " is not Bool");
      break;
    default:
      break;
  }
  for (const auto& c : p.children) validate_program(vocab, c);
}

}  // namespace

void validate(const Machine& m) {
  for (const auto* d : m.vocab.dynamics()) {
    auto it = m.init.find(d->name);
    if (it == m.init.end()) throw SortError("dynamic symbol " + d->name + " has no init rule");
    if (it->second.params.size() != d->arity()) {
      throw SortError("init rule of " + d->name + " has " + std::to_string(it->second.params.size()) +
                      " parameters, expected " + std::to_string(d->arity()));
    }
    if (!uses_only_statics(m.vocab, it->second.term)) {
      throw SortError("init term of " + d->name + " must use only static symbols");
    }
    if (sort_of(m.vocab, it->second.term, d->arg_sorts) != d->result_sort) {
      throw SortError("init term of " + d->name + " has the wrong sort");
    }
  }
  for (const auto& [name, rule] : m.init) {
    const Symbol* s = m.vocab.find_symbol(name);
    if (s == nullptr || !s->is_dynamic()) throw SortError("init rule for non-dynamic symbol " + name);
  }
  validate_program(m.vocab, m.program);
}

// ---- evaluation ----

std::optional<Value> eval_term(const Vocabulary& vocab, const State& s, const Expr& e,
                               std::span<const Value> env) {
  if (e.is_var()) {
    if (e.index >= env.size()) return std::nullopt;
    return env[e.index];
  }
  const Symbol& sym = vocab.symbol(e.name);
  Tuple args;
  args.reserve(e.args.size());
  for (const auto& a : e.args) {
    auto v = eval_term(vocab, s, a, env);
    if (!v) return std::nullopt;
    args.push_back(std::move(*v));
  }
  if (sym.is_dynamic()) {
    const Value* v = s.lookup(sym.name, args);
    if (v == nullptr) return std::nullopt;
    return *v;
  }
  if (sym.input) {
    auto it = s.inputs.find(sym.name);
    if (it == s.inputs.end()) return std::nullopt;
    return it->second;
  }
  return sym.fn(args);
}

PartialFn lift_interpretation(const Vocabulary& vocab, const State& s, const Expr& t,
                              const std::vector<std::size_t>& sigma,
                              const std::vector<std::string>& arg_sorts,
                              const std::vector<std::string>& var_sorts) {
  if (sigma.size() != var_sorts.size()) throw SortError("index map and variable list differ in length");
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    if (sigma[j] >= arg_sorts.size()) throw SortError("index map points past the argument list");
    if (arg_sorts[sigma[j]] != var_sorts[j]) {
      throw SortError("variable " + std::to_string(j + 1) + " has sort " + var_sorts[j] + " but argument " +
                      std::to_string(sigma[j] + 1) + " has sort " + arg_sorts[sigma[j]]);
    }
  }
  sort_of(vocab, t, var_sorts);
  return [&vocab, s, t, sigma](std::span<const Value> a) -> std::optional<Value> {
    Tuple env;
    env.reserve(sigma.size());
    for (std::size_t j : sigma) env.push_back(a[j]);
    return eval_term(vocab, s, t, env);
  };
}

namespace {

Table init_table(const Machine& m, const State& base, const Symbol& d) {
  const InitRule& rule = m.init.at(d.name);
  std::vector<std::size_t> sigma(d.arity());
  for (std::size_t j = 0; j < sigma.size(); ++j) sigma[j] = j;
  PartialFn f = lift_interpretation(m.vocab, base, rule.term, sigma, d.arg_sorts, d.arg_sorts);
  Table table;
  for (const auto& t : m.vocab.tuples(d.arg_sorts)) {
    if (auto v = f(t)) table.emplace(t, std::move(*v));
  }
  return table;
}

}  // namespace

State initial_state(const Machine& m, const std::map<std::string, Value>& inputs) {
  State s;
  for (const auto* in : m.vocab.inputs()) {
    auto it = inputs.find(in->name);
    if (it == inputs.end()) throw Error("missing value for input " + in->name);
    if (!m.vocab.sort(in->result_sort).contains(it->second)) {
      throw SortError("input " + in->name + " = " + it->second.to_string() + " is not in " + in->result_sort);
    }
    s.inputs.emplace(in->name, it->second);
  }
  for (const auto& [name, v] : inputs) {
    const Symbol* sym = m.vocab.find_symbol(name);
    if (sym == nullptr || !sym->input) throw Error(name + " is not an input symbol");
  }
  for (const auto* d : m.vocab.dynamics()) s.dynamic[d->name] = init_table(m, s, *d);
  return s;
}

void check_xi_initial(const Machine& m, const State& s) {
  for (const auto* d : m.vocab.dynamics()) {
    auto it = s.dynamic.find(d->name);
    Table expected = init_table(m, s, *d);
    if (it == s.dynamic.end() || it->second != expected) {
      throw NotXiInitial("interpretation of " + d->name + " differs from its init rule");
    }
  }
}

// ---- one step ----

std::vector<UpdateInstr> active_updates(const Vocabulary& vocab, const State& s, const Program& p) {
  std::vector<UpdateInstr> out;
  auto rec = [&](auto&& self, const Program& q) -> void {
    switch (q.kind) {
      case Program::Kind::Update:
        out.push_back(q.update);
        return;
      case Program::Kind::If: {
        auto c = eval_ground(vocab, s, q.cond);
        if (!c || !c->is_bool()) return;
        self(self, q.children[c->as_bool() ? 0 : 1]);
        return;
      }
      case Program::Kind::Par:
        for (const auto& b : q.children) self(self, b);
        return;
      default:
        return;
    }
  };
  rec(rec, p);
  return out;
}

std::optional<std::vector<ActiveUpdate>> evaluate_updates(const Vocabulary& vocab, const State& s,
                                                          const std::vector<UpdateInstr>& ups) {
  std::vector<ActiveUpdate> out;
  for (const auto& u : ups) {
    ActiveUpdate a;
    a.symbol = u.symbol;
    for (const auto& e : u.args) {
      auto v = eval_ground(vocab, s, e);
      if (!v) return std::nullopt;
      a.args.push_back(std::move(*v));
    }
    auto v = eval_ground(vocab, s, u.rhs);
    if (!v) return std::nullopt;
    a.value = std::move(*v);
    out.push_back(std::move(a));
  }
  return out;
}

std::string ActiveUpdate::to_string() const {
  std::string out = symbol;
  if (!args.empty()) out += tuple_to_string(args);
  return out + " := " + value.to_string();
}

std::optional<Clash> detect_clash(const std::vector<ActiveUpdate>& updates) {
  // Report the lexicographically smallest conflicting pair so the witness
  // does not depend on list order.
  std::optional<Clash> best;
  auto key = [](const ActiveUpdate& u) { return std::tie(u.symbol, u.args, u.value); };
  for (std::size_t i = 0; i < updates.size(); ++i) {
    for (std::size_t j = i + 1; j < updates.size(); ++j) {
      const auto& a = updates[i];
      const auto& b = updates[j];
      if (a.symbol != b.symbol || a.args != b.args || a.value == b.value) continue;
      Clash c = key(a) < key(b) ? Clash{a, b} : Clash{b, a};
      if (!best || std::make_pair(key(c.first), key(c.second)) < std::make_pair(key(best->first), key(best->second))) {
        best = c;
      }
    }
  }
  return best;
}

HaltFail halts_or_fails(const Vocabulary& vocab, const State& s, const Program& p) {
  switch (p.kind) {
    case Program::Kind::Halt:
      return {true, false};
    case Program::Kind::Fail:
      return {false, true};
    case Program::Kind::If: {
      auto c = eval_ground(vocab, s, p.cond);
      if (!c || !c->is_bool()) return {};
      return halts_or_fails(vocab, s, p.children[c->as_bool() ? 0 : 1]);
    }
    case Program::Kind::Par: {
      bool any_halt = false;
      bool any_fail = false;
      for (const auto& b : p.children) {
        auto hf = halts_or_fails(vocab, s, b);
        any_halt = any_halt || hf.halts;
        any_fail = any_fail || hf.fails;
      }
      return {any_halt && !any_fail, any_fail};
    }
    default:
      return {};
  }
}

StepView view(const Vocabulary& vocab, const State& s, const Program& p) {
  auto hf = halts_or_fails(vocab, s, p);
  return {active_updates(vocab, s, p), hf.halts, hf.fails};
}

Outputs outputs_of(const Vocabulary& vocab, const State& s) {
  Outputs out;
  for (const auto* o : vocab.outputs()) out.emplace_back(o->name, s.dynamic.at(o->name));
  return out;
}

StepOutcome successor(const Vocabulary& vocab, const State& s, const StepView& v) {
  StepOutcome r;
  if (v.fails) {
    r.kind = StepOutcome::Kind::Fail;
    r.reason = FailReason::Explicit;
    return r;
  }
  auto ups = evaluate_updates(vocab, s, v.active);
  if (!ups) {
    r.kind = StepOutcome::Kind::Fail;
    r.reason = FailReason::Undefined;
    return r;
  }
  if (auto c = detect_clash(*ups)) {
    r.kind = StepOutcome::Kind::Clash;
    r.clash = std::move(c);
    return r;
  }
  if (v.halts) {
    r.kind = StepOutcome::Kind::HaltSuccess;
    r.outputs = outputs_of(vocab, s);
    return r;
  }
  if (ups->empty()) {
    r.kind = StepOutcome::Kind::ImplicitHalt;
    r.outputs = outputs_of(vocab, s);
    return r;
  }
  r.kind = StepOutcome::Kind::Continue;
  r.next = s;
  for (auto& u : *ups) {
    if (!vocab.sort(vocab.symbol(u.symbol).result_sort).contains(u.value)) {
      r.kind = StepOutcome::Kind::Fail;
      r.reason = FailReason::Undefined;
      r.next = {};
      return r;
    }
    r.next.dynamic[u.symbol][u.args] = u.value;
  }
  return r;
}

RunResult run(const Machine& m, const State& initial, std::size_t max_steps) {
  check_xi_initial(m, initial);
  return run_with(m.vocab, [&](const State& s) { return view(m.vocab, s, m.program); }, initial, max_steps);
}

RunResult run_with(const Vocabulary& vocab, const Stepper& step, const State& initial,
                   std::size_t max_steps) {
  RunResult r;
  r.trajectory.push_back(initial);
  for (;;) {
    const State& cur = r.trajectory.back();
    StepOutcome o = successor(vocab, cur, step(cur));
    switch (o.kind) {
      case StepOutcome::Kind::Continue:
        if (r.steps == max_steps) {
          r.outcome = RunResult::Outcome::Diverged;
          return r;
        }
        r.trajectory.push_back(std::move(o.next));
        ++r.steps;
        continue;
      case StepOutcome::Kind::HaltSuccess:
        r.outcome = RunResult::Outcome::HaltSuccess;
        break;
      case StepOutcome::Kind::ImplicitHalt:
        r.outcome = RunResult::Outcome::ImplicitHalt;
        break;
      case StepOutcome::Kind::Fail:
        r.outcome = RunResult::Outcome::Fail;
        break;
      case StepOutcome::Kind::Clash:
        r.outcome = RunResult::Outcome::Clash;
        break;
    }
    r.outputs = std::move(o.outputs);
    r.reason = o.reason;
    r.clash = std::move(o.clash);
    return r;
  }
}

std::string outcome_name(RunResult::Outcome o) {
  switch (o) {
    case RunResult::Outcome::HaltSuccess: return "halt";
    case RunResult::Outcome::ImplicitHalt: return "implicit-halt";
    case RunResult::Outcome::Fail: return "fail";
    case RunResult::Outcome::Clash: return "clash";
    case RunResult::Outcome::Diverged: return "diverged";
  }
  return "?";
}

namespace {

nlohmann::json table_json(const Table& t, bool constant) {
  if (constant) {
    auto it = t.find(Tuple{});
    return it == t.end() ? nlohmann::json(nullptr) : nlohmann::json(it->second.to_string());
  }
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : t) j[tuple_to_string(k)] = v.to_string();
  return j;
}

}  // namespace

std::string outputs_to_string(const Outputs& out) {
  std::string s;
  for (const auto& [name, table] : out) {
    if (!s.empty()) s += ", ";
    s += name + " = ";
    auto it = table.find(Tuple{});
    if (table.size() == 1 && it != table.end()) {
      s += it->second.to_string();
    } else {
      s += "{";
      bool first = true;
      for (const auto& [k, v] : table) {
        if (!first) s += ", ";
        first = false;
        s += tuple_to_string(k) + " -> " + v.to_string();
      }
      s += "}";
    }
  }
  return s;
}

std::string trajectory_record(const Vocabulary& vocab, std::size_t step, const State& s) {
  nlohmann::json j;
  j["step"] = step;
  nlohmann::json dyn = nlohmann::json::object();
  for (const auto* d : vocab.dynamics()) {
    auto it = s.dynamic.find(d->name);
    dyn[d->name] = table_json(it == s.dynamic.end() ? Table{} : it->second, d->arity() == 0);
  }
  j["dynamic"] = std::move(dyn);
  return j.dump();
}

}  // namespace asmlc

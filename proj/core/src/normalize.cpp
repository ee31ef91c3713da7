#include "asmlc/normalize.hpp"

#include <algorithm>

namespace asmlc {

Guard Guard::truth() { return Guard{}; }

Guard Guard::is(Expr c, bool want) {
  Guard g;
  g.kind = Kind::Atom;
  g.term = std::move(c);
  g.want = want;
  return g;
}

Guard Guard::negate(Guard inner) {
  Guard g;
  g.kind = Kind::Not;
  g.parts.push_back(std::move(inner));
  return g;
}

Guard Guard::conj(std::vector<Guard> gs) {
  Guard g;
  g.kind = Kind::And;
  g.parts = std::move(gs);
  return g;
}

bool Guard::holds(const Vocabulary& vocab, const State& s) const {
  switch (kind) {
    case Kind::True:
      return true;
    case Kind::Atom: {
      auto v = eval_ground(vocab, s, term);
      return v && v->is_bool() && v->as_bool() == want;
    }
    case Kind::Not:
      return !parts[0].holds(vocab, s);
    case Kind::And:
      return std::all_of(parts.begin(), parts.end(), [&](const Guard& g) { return g.holds(vocab, s); });
  }
  return false;
}

std::string Guard::to_string() const {
  switch (kind) {
    case Kind::True:
      return "true";
    case Kind::Atom:
      return std::string(want ? "T(" : "F(") + term.to_string() + ")";
    case Kind::Not: {
      const Guard& p = parts[0];
      return p.kind == Kind::And ? "!(" + p.to_string() + ")" : "!" + p.to_string();
    }
    case Kind::And: {
      std::string out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " & ";
        out += parts[i].kind == Kind::And ? "(" + parts[i].to_string() + ")" : parts[i].to_string();
      }
      return out;
    }
  }
  return "";
}

namespace {

void flatten(const Guard& g, std::vector<Guard>& out) {
  switch (g.kind) {
    case Guard::Kind::True:
      return;
    case Guard::Kind::And:
      for (const auto& p : g.parts) flatten(p, out);
      return;
    case Guard::Kind::Not: {
      const Guard& inner = g.parts[0];
      if (inner.kind == Guard::Kind::Not) {
        flatten(inner.parts[0], out);
        return;
      }
      auto s = simplify(inner);
      if (!s) return;  // !false
      if (s->kind == Guard::Kind::True) {
        out.push_back(Guard::negate(Guard::truth()));
        return;
      }
      out.push_back(Guard::negate(std::move(*s)));
      return;
    }
    case Guard::Kind::Atom:
      out.push_back(g);
      return;
  }
}

}  // namespace

std::optional<Guard> simplify(const Guard& g) {
  std::vector<Guard> flat;
  flatten(g, flat);
  std::vector<Guard> uniq;
  for (auto& c : flat) {
    if (c.kind == Guard::Kind::Not && c.parts[0].kind == Guard::Kind::True) return std::nullopt;
    if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(std::move(c));
  }
  for (const auto& a : uniq) {
    for (const auto& b : uniq) {
      if (a.kind == Guard::Kind::Atom && b.kind == Guard::Kind::Atom && a.term == b.term && a.want != b.want) {
        return std::nullopt;
      }
      if (b.kind == Guard::Kind::Not && b.parts[0] == a) return std::nullopt;
    }
  }
  if (uniq.empty()) return Guard::truth();
  if (uniq.size() == 1) return uniq[0];
  return Guard::conj(std::move(uniq));
}

StepView GuardedProgram::step(const Vocabulary& vocab, const State& s) const {
  StepView v;
  bool any_halt = false;
  for (const auto& c : clauses) {
    if (!c.guard.holds(vocab, s)) continue;
    for (const auto& i : c.instrs) {
      switch (i.kind) {
        case Instr::Kind::Update:
          v.active.push_back(i.update);
          break;
        case Instr::Kind::Halt:
          any_halt = true;
          break;
        case Instr::Kind::Fail:
          v.fails = true;
          break;
      }
    }
  }
  v.halts = any_halt && !v.fails;
  return v;
}

std::size_t GuardedProgram::true_guards(const Vocabulary& vocab, const State& s) const {
  return static_cast<std::size_t>(
      std::count_if(clauses.begin(), clauses.end(), [&](const Clause& c) { return c.guard.holds(vocab, s); }));
}

std::string GuardedProgram::to_string() const {
  std::string out = "guarded {\n";
  for (const auto& c : clauses) {
    out += "  when " + c.guard.to_string() + " do {";
    for (std::size_t i = 0; i < c.instrs.size(); ++i) {
      out += i ? "; " : " ";
      switch (c.instrs[i].kind) {
        case Instr::Kind::Update: out += c.instrs[i].update.to_string(); break;
        case Instr::Kind::Halt: out += "halt"; break;
        case Instr::Kind::Fail: out += "fail"; break;
      }
    }
    out += " }\n";
  }
  return out + "}";
}

namespace {

std::vector<Clause> clauses_of(const Program& p) {
  switch (p.kind) {
    case Program::Kind::Skip:
      return {};
    case Program::Kind::Halt:
      return {{Guard::truth(), {{Instr::Kind::Halt, {}}}}};
    case Program::Kind::Fail:
      return {{Guard::truth(), {{Instr::Kind::Fail, {}}}}};
    case Program::Kind::Update:
      return {{Guard::truth(), {{Instr::Kind::Update, p.update}}}};
    case Program::Kind::If: {
      std::vector<Clause> out;
      for (int branch = 0; branch < 2; ++branch) {
        Guard side = Guard::is(p.cond, branch == 0);
        for (auto& c : clauses_of(p.children[static_cast<std::size_t>(branch)])) {
          auto g = simplify(Guard::conj({side, std::move(c.guard)}));
          if (g) out.push_back({std::move(*g), std::move(c.instrs)});
        }
      }
      return out;
    }
    case Program::Kind::Par: {
      // Product over blocks of (one clause of the block, or none of them).
      // Each block's clauses are mutually exclusive, so the products are too.
      std::vector<Clause> acc{{Guard::truth(), {}}};
      for (const auto& b : p.children) {
        std::vector<Clause> cs = clauses_of(b);
        if (cs.empty()) continue;
        std::vector<Guard> none;
        for (const auto& c : cs) none.push_back(Guard::negate(c.guard));
        Clause idle{Guard::conj(std::move(none)), {}};
        std::vector<const Clause*> options;
        for (const auto& x : cs) options.push_back(&x);
        options.push_back(&idle);
        std::vector<Clause> next;
        for (const auto& a : acc) {
          for (const Clause* c : options) {
            auto g = simplify(Guard::conj({a.guard, c->guard}));
            if (!g) continue;
            Clause merged{std::move(*g), a.instrs};
            merged.instrs.insert(merged.instrs.end(), c->instrs.begin(), c->instrs.end());
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      std::vector<Clause> out;
      for (auto& c : acc) {
        if (!c.instrs.empty()) out.push_back(std::move(c));
      }
      return out;
    }
  }
  return {};
}

}  // namespace

GuardedProgram normalize(const Program& p) { return GuardedProgram{clauses_of(p)}; }

GuardedProgram normalize(const GuardedProgram& g) {
  GuardedProgram out;
  for (const auto& c : g.clauses) {
    if (c.instrs.empty()) continue;
    auto s = simplify(c.guard);
    if (s) out.clauses.push_back({std::move(*s), c.instrs});
  }
  return out;
}

RunResult run_guarded(const Machine& m, const GuardedProgram& g, const State& initial, std::size_t max_steps) {
  check_xi_initial(m, initial);
  return run_with(m.vocab, [&](const State& s) { return g.step(m.vocab, s); }, initial, max_steps);
}

bool same_run(const RunResult& a, const RunResult& b) {
  auto clash_eq = [](const std::optional<Clash>& x, const std::optional<Clash>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->first == y->first && x->second == y->second);
  };
  return a.outcome == b.outcome && a.steps == b.steps && a.trajectory == b.trajectory && a.outputs == b.outputs &&
         a.reason == b.reason && clash_eq(a.clash, b.clash);
}

bool check_equivalence(const Machine& m, const GuardedProgram& g, const std::vector<State>& initial_states,
                       std::size_t max_steps) {
  for (const auto& s : initial_states) {
    if (!same_run(run(m, s, max_steps), run_guarded(m, g, s, max_steps))) return false;
  }
  return true;
}

}  // namespace asmlc

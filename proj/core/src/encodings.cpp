#include "asmlc/encodings.hpp"

#include "asmlc/lambda/reduce.hpp"

namespace asmlc::enc {
namespace {

using lambda::ReduceStatus;

Term v(const std::string& n) { return Term::var(n); }

Term lam(std::initializer_list<std::string> binders, Term body) {
  return Term::abs(std::vector<std::string>(binders), std::move(body));
}

Term ap(Term f, std::initializer_list<Term> args) {
  return Term::apps(std::move(f), std::vector<Term>(args));
}

std::string fresh_for(const std::string& base, const std::vector<Term>& terms) {
  std::string name = base;
  for (;;) {
    bool clash = false;
    for (const auto& t : terms) clash = clash || t.has_free(name);
    if (!clash) return name;
    name += "'";
  }
}

}  // namespace

Term identity() { return lam({"x"}, v("x")); }
Term true_term() { return lam({"x", "y"}, v("x")); }
Term false_term() { return lam({"x", "y"}, v("y")); }
Term boolean(bool b) { return b ? true_term() : false_term(); }

Term neg() { return lam({"a"}, ap(v("a"), {false_term(), true_term()})); }
Term and_term() { return lam({"a", "b"}, ap(v("a"), {v("b"), false_term()})); }
Term or_term() { return lam({"a", "b"}, ap(v("a"), {true_term(), v("b")})); }
Term implies_term() { return lam({"a", "b"}, ap(v("a"), {v("b"), true_term()})); }
Term iff_term() {
  return lam({"a", "b"}, ap(v("a"), {v("b"), ap(v("b"), {false_term(), true_term()})}));
}

Term if_then_else(const Term& m, const Term& n) {
  std::string z = fresh_for("z", {m, n});
  return Term::abs(z, Term::apps(v(z), {m, n}));
}

Term tuple(const std::vector<Term>& items) {
  std::string z = fresh_for("z", items);
  return Term::abs(z, Term::apps(v(z), items));
}

Term projection(int k, int i) {
  if (i < 1 || i > k) throw Error("projection index out of range");
  std::vector<std::string> xs;
  for (int j = 1; j <= k; ++j) xs.push_back("x" + std::to_string(j));
  return Term::abs(xs, v(xs[i - 1]));
}

Term nat(std::uint64_t n) {
  Term t = tuple({true_term(), false_term()});
  for (std::uint64_t j = 0; j < n; ++j) t = tuple({false_term(), t});
  return t;
}

Term zero_test() { return lam({"z"}, Term::app(v("z"), true_term())); }
Term succ() { return lam({"n", "z"}, ap(v("z"), {false_term(), v("n")})); }
Term pred() { return lam({"z"}, Term::app(v("z"), false_term())); }

Term iterate_identity(int count, const Term& m) {
  Term t = m;
  for (int j = 0; j < count; ++j) t = Term::app(identity(), t);
  return t;
}

Term case_n(int n) {
  if (n < 1) throw Error("Case_n needs n >= 1");
  // Selecting at level i costs 2i steps. The selected branch is
  // \d. d (d (... yi)) with 2(n-i) copies of d, applied to a trailing I, so
  // every branch totals 2n binders + 2n + 1.
  std::vector<std::string> ys;
  std::vector<std::string> zs;
  for (int j = 1; j <= n; ++j) {
    ys.push_back("y" + std::to_string(j));
    zs.push_back("z" + std::to_string(j));
  }
  Term rest = identity();
  for (int i = n; i >= 1; --i) {
    Term chosen = v(ys[i - 1]);
    for (int j = 0; j < 2 * (n - i); ++j) chosen = Term::app(v("d"), chosen);
    rest = Term::apps(v(zs[i - 1]), {Term::abs("d", chosen), rest});
  }
  std::vector<std::string> binders = ys;
  binders.insert(binders.end(), zs.begin(), zs.end());
  return Term::abs(binders, Term::app(rest, identity()));
}

// ---- Scott datatypes ----

std::size_t DatatypeDef::constructor_count(const Value& val) const {
  switch (val.kind()) {
    case Value::Kind::Bool:
    case Value::Kind::Nat:
    case Value::Kind::Seq:
      return 2;
    case Value::Kind::Tuple:
      return 1;
    case Value::Kind::Ctor: {
      auto it = sorts.find(val.sort());
      if (it == sorts.end()) throw Error("sort " + val.sort() + " is not in the datatype");
      return it->second.size();
    }
  }
  return 0;
}

namespace {

Term scott(std::size_t index, std::size_t count, const std::vector<Term>& fields) {
  std::vector<std::string> binders;
  for (std::size_t j = 1; j <= count; ++j) binders.push_back("a" + std::to_string(j));
  return Term::abs(binders, Term::apps(v(binders[index]), fields));
}

}  // namespace

Term encode_value(const DatatypeDef& d, const Value& val) {
  auto enc_all = [&](const std::vector<Value>& vs) {
    std::vector<Term> out;
    for (const auto& x : vs) out.push_back(encode_value(d, x));
    return out;
  };
  switch (val.kind()) {
    case Value::Kind::Bool:
      return scott(val.as_bool() ? 0 : 1, 2, {});
    case Value::Kind::Nat:
      if (val.as_nat() == 0) return scott(0, 2, {});
      return scott(1, 2, {encode_value(d, Value::nat(val.as_nat() - 1, val.sort()))});
    case Value::Kind::Tuple:
      return scott(0, 1, enc_all(val.items()));
    case Value::Kind::Seq: {
      if (val.items().empty()) return scott(0, 2, {});
      std::vector<Value> tail(val.items().begin() + 1, val.items().end());
      return scott(1, 2, {encode_value(d, val.items().front()),
                          encode_value(d, Value::seq(std::move(tail), val.sort()))});
    }
    case Value::Kind::Ctor: {
      auto it = d.sorts.find(val.sort());
      if (it == d.sorts.end()) throw Error("value " + val.to_string() + " is not in the datatype");
      const auto& ctors = it->second;
      auto idx = static_cast<std::size_t>(val.ctor_index());
      if (idx >= ctors.size() || ctors[idx].name != val.ctor_name() ||
          ctors[idx].arg_sorts.size() != val.items().size() ||
          static_cast<std::size_t>(val.ctor_count()) != ctors.size()) {
        throw Error("value " + val.to_string() + " does not match its constructor signature");
      }
      return scott(idx, ctors.size(), enc_all(val.items()));
    }
  }
  throw Error("unencodable value");
}

namespace {

// Splits \a1..ap. ai f1..fk into (i, fields); throws on other shapes.
std::pair<std::size_t, std::vector<Term>> unscott(const Term& t, std::size_t count) {
  std::vector<std::string> binders;
  Term body = t;
  for (std::size_t j = 0; j < count; ++j) {
    if (!body.is_abs()) throw Error("not a Scott code: " + t.to_string());
    binders.push_back(body.name());
    body = body.body();
  }
  Term head = body.head();
  if (!head.is_var()) throw Error("not a Scott code: " + t.to_string());
  for (std::size_t j = count; j-- > 0;) {
    if (binders[j] == head.name()) {
      for (std::size_t k = j + 1; k < count; ++k) {
        if (binders[k] == head.name()) throw Error("not a Scott code: " + t.to_string());
      }
      return {j, body.spine_args()};
    }
  }
  throw Error("not a Scott code: " + t.to_string());
}

std::vector<std::string> split_sorts(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '<') ++depth;
    if (c == '>') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Value decode_value(const DatatypeDef& d, const Term& t, const std::string& sort) {
  if (sort == "Bool") {
    auto [i, fields] = unscott(t, 2);
    if (!fields.empty()) throw Error("not a Bool code");
    return Value::boolean(i == 0);
  }
  if (sort.rfind("Seq:", 0) == 0) {
    std::string elem = sort.substr(4);
    std::vector<Value> items;
    Term cur = t;
    for (;;) {
      auto [i, fields] = unscott(cur, 2);
      if (i == 0) break;
      if (fields.size() != 2) throw Error("malformed cons cell");
      items.push_back(decode_value(d, fields[0], elem));
      cur = fields[1];
    }
    return Value::seq(std::move(items), sort);
  }
  if (sort.rfind("Tuple:", 0) == 0) {
    auto parts = split_sorts(sort.substr(6));
    auto [i, fields] = unscott(t, 1);
    if (fields.size() != parts.size()) throw Error("tuple arity mismatch");
    std::vector<Value> items;
    for (std::size_t j = 0; j < parts.size(); ++j) items.push_back(decode_value(d, fields[j], parts[j]));
    return Value::tuple(std::move(items));
  }
  if (auto it = d.sorts.find(sort); it != d.sorts.end()) {
    const auto& ctors = it->second;
    auto [i, fields] = unscott(t, ctors.size());
    const auto& c = ctors[i];
    if (fields.size() != c.arg_sorts.size()) throw Error("constructor arity mismatch");
    std::vector<Value> args;
    for (std::size_t j = 0; j < fields.size(); ++j) args.push_back(decode_value(d, fields[j], c.arg_sorts[j]));
    return Value::ctor(sort, c.name, static_cast<int>(i), static_cast<int>(ctors.size()), std::move(args));
  }
  // Anything else is read as a natural-number sort.
  std::uint64_t n = 0;
  Term cur = t;
  for (;;) {
    auto [i, fields] = unscott(cur, 2);
    if (i == 0) break;
    if (fields.size() != 1) throw Error("malformed successor");
    ++n;
    cur = fields[0];
  }
  return Value::nat(n, sort);
}

// ---- certificates ----

CostCertificate measure(std::string name, std::map<std::string, std::int64_t> params,
                        const Term& t, const lambda::FSignature* sig, std::uint64_t budget) {
  auto r = sig != nullptr ? lambda::reduce_leftmost_f(t, *sig, budget, lambda::TraceMode::CountsOnly)
                          : lambda::reduce_leftmost(t, budget, lambda::TraceMode::CountsOnly);
  if (r.status != ReduceStatus::Normal) throw Error(name + ": no normal form within budget");
  CostCertificate c;
  c.name = std::move(name);
  c.params = std::move(params);
  c.beta = r.trace.beta_count;
  c.f = r.trace.f_count;
  c.result = r.term;
  return c;
}

CostCertificate projection_cost(int k, int i) {
  std::vector<Term> xs;
  for (int j = 1; j <= k; ++j) xs.push_back(v("u" + std::to_string(j)));
  Term t = Term::app(tuple(xs), projection(k, i));
  // The reduction sequence is forced: at most one redex at every step.
  std::int64_t unique = 1;
  for (Term cur = t; auto at = lambda::leftmost_redex(cur);) {
    if (lambda::beta_redexes(cur).size() != 1) unique = 0;
    cur = lambda::beta_step(cur, *at);
  }
  auto c = measure("projection", {{"k", k}, {"i", i}, {"unique", unique}}, t);
  if (!(c.result == xs[static_cast<std::size_t>(i - 1)])) throw Error("projection selected the wrong item");
  return c;
}

CostCertificate case_cost(int n, int i) {
  std::vector<Term> args;
  for (int j = 1; j <= n; ++j) args.push_back(v("m" + std::to_string(j)));
  for (int j = 1; j <= n; ++j) args.push_back(boolean(j >= i));
  auto c = measure("case", {{"n", n}, {"i", i}}, Term::apps(case_n(n), args));
  if (!(c.result == args[static_cast<std::size_t>(i - 1)])) throw Error("Case_n selected the wrong branch");
  return c;
}

}  // namespace asmlc::enc

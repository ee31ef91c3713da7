#include "asmlc/lambda/delta.hpp"

#include <algorithm>

namespace asmlc::lambda {
namespace {

bool prefix_matches(const Value& entry, std::span<const Value> prefix) {
  const auto& items = entry.items();
  if (items.size() != prefix.size() + 1) return false;
  return std::equal(prefix.begin(), prefix.end(), items.begin());
}

bool functional(const Value& list) {
  const auto& es = list.items();
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const auto& a = es[i].items();
      const auto& b = es[j].items();
      if (std::equal(a.begin(), a.end() - 1, b.begin()) && a.back() != b.back()) return false;
    }
  }
  return true;
}

}  // namespace

std::string DeltaType::tag() const {
  std::string out;
  for (const auto& s : arg_sorts) out += s + "_";
  return out + result_sort;
}

std::optional<Value> delta_semantics(DeltaOp op, const DeltaType& type,
                                     std::span<const Value> args) {
  const std::size_t m = type.arity();
  switch (op) {
    case DeltaOp::F:
      return Value::boolean(functional(args[0]));
    case DeltaOp::B: {
      const auto& es = args[0].items();
      auto prefix = args.subspan(1, m);
      return Value::boolean(
          std::any_of(es.begin(), es.end(), [&](const Value& e) { return prefix_matches(e, prefix); }));
    }
    case DeltaOp::V: {
      if (!functional(args[0])) return std::nullopt;
      auto prefix = args.subspan(1, m);
      for (const auto& e : args[0].items()) {
        if (prefix_matches(e, prefix)) return e.items().back();
      }
      return std::nullopt;
    }
    case DeltaOp::Add: {
      auto items = args[0].items();
      items.push_back(args[1]);
      return Value::seq(std::move(items), args[0].sort());
    }
    case DeltaOp::Del: {
      std::vector<Value> items;
      for (const auto& e : args[0].items()) {
        if (e != args[1]) items.push_back(e);
      }
      return Value::seq(std::move(items), args[0].sort());
    }
    case DeltaOp::Tup:
      return Value::tuple(std::vector<Value>(args.begin(), args.end()), type.entry_sort());
  }
  return std::nullopt;
}

void add_delta_constants(FSignature& sig, const DeltaType& type) {
  auto fn = [type](DeltaOp op) {
    return [type, op](std::span<const Value> a) { return delta_semantics(op, type, a); };
  };
  const std::string list = type.list_sort();
  const std::string entry = type.entry_sort();
  std::vector<std::string> keyed{list};
  keyed.insert(keyed.end(), type.arg_sorts.begin(), type.arg_sorts.end());
  std::vector<std::string> tup = type.arg_sorts;
  tup.push_back(type.result_sort);

  auto put = [&](std::string_view op, std::vector<std::string> sorts, std::string result,
                 DeltaOp which, bool total) {
    if (sig.contains(type.name(op))) return;
    sig.add({type.name(op), std::move(sorts), std::move(result), fn(which), total});
  };
  put("F", {list}, "Bool", DeltaOp::F, true);
  put("B", keyed, "Bool", DeltaOp::B, true);
  put("V", keyed, type.result_sort, DeltaOp::V, false);
  put("Add", {list, entry}, list, DeltaOp::Add, true);
  put("Del", {list, entry}, list, DeltaOp::Del, true);
  put("Tup", tup, entry, DeltaOp::Tup, true);
}

std::vector<std::pair<Tuple, Value>> delta_entries(const Value& list) {
  std::vector<std::pair<Tuple, Value>> out;
  for (const auto& e : list.items()) {
    Tuple key(e.items().begin(), e.items().end() - 1);
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& kv) { return kv.first == key; });
    if (it != out.end()) {
      it->second = e.items().back();
    } else {
      out.emplace_back(std::move(key), e.items().back());
    }
  }
  return out;
}

}  // namespace asmlc::lambda

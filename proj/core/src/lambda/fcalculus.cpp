#include "asmlc/lambda/fcalculus.hpp"

namespace asmlc::lambda {

void FSignature::add(FFunction f) {
  if (fns_.count(f.name) != 0) throw Error("duplicate constant #" + f.name);
  std::string key = f.name;
  fns_.emplace(std::move(key), std::move(f));
}

void FSignature::put(FFunction f) {
  std::string key = f.name;
  fns_.insert_or_assign(std::move(key), std::move(f));
}

const FFunction* FSignature::find(const std::string& name) const {
  auto it = fns_.find(name);
  return it == fns_.end() ? nullptr : &it->second;
}

FSignature FSignature::booleans() {
  FSignature sig;
  auto nullary = [](bool b) {
    return [b](std::span<const Value>) -> std::optional<Value> { return Value::boolean(b); };
  };
  auto binary = [](auto op) {
    return [op](std::span<const Value> a) -> std::optional<Value> {
      return Value::boolean(op(a[0].as_bool(), a[1].as_bool()));
    };
  };
  sig.add({"True", {}, "Bool", nullary(true)});
  sig.add({"False", {}, "Bool", nullary(false)});
  sig.add({"not", {"Bool"}, "Bool", [](std::span<const Value> a) -> std::optional<Value> {
             return Value::boolean(!a[0].as_bool());
           }});
  sig.add({"and", {"Bool", "Bool"}, "Bool", binary([](bool x, bool y) { return x && y; })});
  sig.add({"or", {"Bool", "Bool"}, "Bool", binary([](bool x, bool y) { return x || y; })});
  sig.add({"implies", {"Bool", "Bool"}, "Bool", binary([](bool x, bool y) { return !x || y; })});
  sig.add({"iff", {"Bool", "Bool"}, "Bool", binary([](bool x, bool y) { return x == y; })});
  return sig;
}

}  // namespace asmlc::lambda

#include "asmlc/value.hpp"

#include <sstream>
#include <utility>

namespace asmlc {

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.sort_ = "Bool";
  v.scalar_ = b ? 1 : 0;
  return v;
}

Value Value::nat(std::uint64_t n, std::string sort) {
  Value v = boolean(false);
  v.kind_ = Kind::Nat;
  v.sort_ = std::move(sort);
  v.scalar_ = n;
  return v;
}

Value Value::ctor(std::string sort, std::string name, int index, int count,
                  std::vector<Value> args) {
  if (index < 0 || index >= count) {
    throw Error("constructor index out of range for " + name);
  }
  Value v = boolean(false);
  v.kind_ = Kind::Ctor;
  v.sort_ = std::move(sort);
  v.name_ = std::move(name);
  v.index_ = index;
  v.count_ = count;
  v.items_ = std::move(args);
  return v;
}

Value Value::tuple(std::vector<Value> items, std::string sort) {
  Value v = boolean(false);
  v.kind_ = Kind::Tuple;
  v.sort_ = sort.empty() ? "Tuple" : std::move(sort);
  v.items_ = std::move(items);
  return v;
}

Value Value::seq(std::vector<Value> items, std::string sort) {
  Value v = boolean(false);
  v.kind_ = Kind::Seq;
  v.sort_ = std::move(sort);
  v.items_ = std::move(items);
  return v;
}

bool Value::as_bool() const {
  if (kind_ != Kind::Bool) throw Error("not a Boolean: " + to_string());
  return scalar_ != 0;
}

std::uint64_t Value::as_nat() const {
  if (kind_ != Kind::Nat) throw Error("not a natural: " + to_string());
  return scalar_;
}

bool operator==(const Value& a, const Value& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.sort_.compare(b.sort_) <=> 0; c != 0) return c;
  if (auto c = a.scalar_ <=> b.scalar_; c != 0) return c;
  if (auto c = a.index_ <=> b.index_; c != 0) return c;
  if (auto c = a.count_ <=> b.count_; c != 0) return c;
  if (auto c = a.name_.compare(b.name_) <=> 0; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end());
}

std::string tuple_to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += t[i].to_string();
  }
  return out + ")";
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Bool:
      return scalar_ ? "True" : "False";
    case Kind::Nat:
      return sort_ == "Nat" ? std::to_string(scalar_)
                            : sort_ + "." + std::to_string(scalar_);
    case Kind::Ctor: {
      std::string out = sort_ + "." + name_;
      if (!items_.empty()) out += tuple_to_string(items_);
      return out;
    }
    case Kind::Tuple:
      return (sort_ == "Tuple" ? "" : sort_) + tuple_to_string(items_);
    case Kind::Seq: {
      std::string out = sort_ + "<";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ", ";
        out += items_[i].to_string();
      }
      return out + ">";
    }
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  return os << v.to_string();
}

}  // namespace asmlc

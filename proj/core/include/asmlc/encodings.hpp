#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/lambda/term.hpp"
#include "asmlc/value.hpp"

namespace asmlc::enc {

using lambda::Term;

// ---- catalog ----

Term identity();          // \x. x
Term true_term();         // \x y. x
Term false_term();        // \x y. y
Term boolean(bool b);
Term neg();               // \a. a False True
Term and_term();          // \a b. a b False
Term or_term();           // \a b. a True b
Term implies_term();      // \a b. a b True
Term iff_term();          // \a b. a b (b False True)
Term if_then_else(const Term& m, const Term& n);  // \z. z M N

// <u1, ..., uk> = \z. z u1 ... uk, with z fresh for the ui.
Term tuple(const std::vector<Term>& items);
// pi^k_i = \x1 ... xk. xi, 1 <= i <= k.
Term projection(int k, int i);

// Naturals in the pair style: 0 = \z. z True False, n+1 = <False, n>.
Term nat(std::uint64_t n);
Term zero_test();  // \z. z True
Term succ();       // \n z. z False n
Term pred();       // \z. z False

// Case_n M1..Mn t1..tn reduces to Mi for the first ti = True, at a cost
// that does not depend on i.
Term case_n(int n);

// I (I (... (I m))) with `count` copies of I: `count` leftmost steps to m.
Term iterate_identity(int count, const Term& m);

// ---- Scott datatypes ----

struct Constructor {
  std::string name;
  std::vector<std::string> arg_sorts;
};

// Free inductive sorts, possibly mutually recursive. Bool, naturals, tuples
// and sequences are built in and need no entry.
struct DatatypeDef {
  std::map<std::string, std::vector<Constructor>> sorts;

  // Constructors of `v`'s datatype, in Scott order.
  std::size_t constructor_count(const Value& v) const;
};

// Full Scott code: constructor i of p with fields f1..fk is
// \a1 ... ap. ai <f1> ... <fk>. Closed and normal.
Term encode_value(const DatatypeDef& d, const Value& v);

// Inverse of encode_value for a value of `sort` (a sort of `d` or a built-in:
// Bool, a Nat sort, Seq with element sort "Seq:<elem>", Tuple "Tuple:<a>,<b>").
Value decode_value(const DatatypeDef& d, const Term& t, const std::string& sort);

// ---- cost certificates ----

struct CostCertificate {
  std::string name;
  std::map<std::string, std::int64_t> params;
  std::uint64_t beta = 0;
  std::uint64_t f = 0;
  Term result;

  bool operator==(const CostCertificate& o) const {
    return name == o.name && params == o.params && beta == o.beta && f == o.f;
  }
};

// Leftmost cost of `t` to normal form; throws Error if it does not normalize
// within `budget`.
CostCertificate measure(std::string name, std::map<std::string, std::int64_t> params,
                        const Term& t, const lambda::FSignature* sig = nullptr,
                        std::uint64_t budget = 100000);

// <x1, ..., xk> pi^k_i over fresh variables.
CostCertificate projection_cost(int k, int i);

// Case_n m1..mn applied to booleans whose first True is at position i.
CostCertificate case_cost(int n, int i);

}  // namespace asmlc::enc

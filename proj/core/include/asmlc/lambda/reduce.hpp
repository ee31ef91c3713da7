#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asmlc/lambda/term.hpp"

namespace asmlc::lambda {

class FSignature;

enum class RedexKind : std::uint8_t { Beta, F };

struct TraceStep {
  RedexKind kind;
  Address address;
  Term after;  // empty when the trace only keeps counts
};

// Decorated reduction sequence: beta_count + f_count == number of steps.
struct Trace {
  std::vector<TraceStep> steps;
  std::uint64_t beta_count = 0;
  std::uint64_t f_count = 0;

  std::uint64_t length() const { return beta_count + f_count; }
  void append(const Trace& other);
};

enum class TraceMode : std::uint8_t { Full, CountsOnly };

enum class ReduceStatus : std::uint8_t {
  Normal,           // no redex left
  BudgetExhausted,  // max_steps reached with a redex left
  Undefined,        // an F-redex whose function has no value there
};

struct ReduceResult {
  Term term;
  Trace trace;
  ReduceStatus status = ReduceStatus::Normal;
  std::optional<Address> undefined_at;
};

class NotARedex : public Error {
 public:
  using Error::Error;
};

// (\x. M) N, or a value code applied to an argument (a code stands for its
// Scott term, which is an abstraction).
bool is_beta_redex(const Term& t);

// Contract the beta-redex at `at`.
Term beta_step(const Term& t, const Address& at);

// Leftmost beta-redex in prefix order of the redex's abstraction.
std::optional<Address> leftmost_redex(const Term& t);

// All beta-redexes, in prefix order.
std::vector<Address> beta_redexes(const Term& t);

bool is_beta_normal(const Term& t);

// Leftmost beta reduction with a mandatory step budget.
ReduceResult reduce_leftmost(const Term& t, std::uint64_t max_steps,
                             TraceMode mode = TraceMode::Full);

namespace detail {
// Shared driver: F-first when `sig` is non-null, plain leftmost otherwise.
ReduceResult drive(const Term& t, const FSignature* sig, std::uint64_t max_steps,
                   TraceMode mode);
}  // namespace detail

}  // namespace asmlc::lambda

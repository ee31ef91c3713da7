#pragma once

#include <cstddef>
#include <vector>

#include "asmlc/lambda/fcalculus.hpp"
#include "asmlc/lambda/term.hpp"

namespace asmlc::lambda {

struct ConfluenceResult {
  bool confluent = true;   // every normal form reached is alpha-equal
  bool conclusive = true;  // false when a term outgrew the size cap
  std::size_t terms_explored = 0;
  std::vector<Term> normal_forms;  // distinct up to alpha
};

// Explores every reduction sequence of length <= depth (all beta-redexes,
// plus F-redexes when `sig` is given). Test oracle only: exponential.
ConfluenceResult check_confluence_bounded(const Term& t, int depth,
                                          const FSignature* sig = nullptr,
                                          std::size_t size_cap = 400);

}  // namespace asmlc::lambda

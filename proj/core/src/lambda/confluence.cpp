#include "asmlc/lambda/confluence.hpp"

#include <set>
#include <string>

namespace asmlc::lambda {

ConfluenceResult check_confluence_bounded(const Term& t, int depth, const FSignature* sig,
                                          std::size_t size_cap) {
  ConfluenceResult res;
  std::set<std::string> seen{t.canonical()};
  std::set<std::string> normal_seen;
  std::vector<Term> frontier{t};
  for (int level = 0; level <= depth && !frontier.empty(); ++level) {
    std::vector<Term> next;
    for (const Term& cur : frontier) {
      ++res.terms_explored;
      std::vector<Term> succ;
      for (const auto& at : beta_redexes(cur)) succ.push_back(beta_step(cur, at));
      if (sig != nullptr) {
        for (const auto& at : f_redexes(cur, *sig)) {
          try {
            succ.push_back(f_step(cur, at, *sig));
          } catch (const UndefinedApplication&) {
            // stuck redex: not a normal form, no successor
            res.conclusive = false;
          }
        }
      }
      if (succ.empty()) {
        if (normal_seen.insert(cur.canonical()).second) res.normal_forms.push_back(cur);
        continue;
      }
      if (level == depth) continue;
      for (auto& s : succ) {
        if (s.size() > size_cap) {
          res.conclusive = false;
          continue;
        }
        if (seen.insert(s.canonical()).second) next.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  res.confluent = res.normal_forms.size() <= 1;
  return res;
}

}  // namespace asmlc::lambda

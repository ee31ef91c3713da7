#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "asmlc/compiler.hpp"
#include "asmlc/machine.hpp"

namespace asmlc::cosim {

struct RoundRecord {
  std::size_t round = 0;
  std::string asm_state;  // digest of the state the round starts from
  std::string lambda;     // decoded result of the round
  std::uint64_t beta = 0;
  std::uint64_t f = 0;
  bool match = false;
  std::string detail;  // first mismatch, if any
};

struct LockstepReport {
  enum class Verdict : std::uint8_t { Pass, Fail, Inconclusive };
  std::vector<RoundRecord> rounds;
  std::string asm_outcome;
  std::string lambda_outcome;
  Verdict verdict = Verdict::Fail;
  std::string reason;
  int K = 0;
  int L = 0;

  bool pass() const { return verdict == Verdict::Pass; }
  // Every per-round (beta, F) pair seen.
  std::set<std::pair<std::uint64_t, std::uint64_t>> costs() const;
  // One JSON object per round, then one summary object.
  std::string to_jsonl() const;
  std::string summary() const;
};

std::string verdict_name(LockstepReport::Verdict v);

// Digest of the dynamic part of a state, e.g. `a=12 b=8 f={0:0,1:2}`.
std::string state_digest(const Vocabulary& vocab, const State& s);

// Advances the machine one step and the term K+L leftmost reductions per
// round, comparing decoded slots with the state after every round. The last
// round must land on the exit code of the run's outcome.
LockstepReport lockstep(const compiler::CompiledMachine& cm, const std::map<std::string, Value>& inputs,
                        std::size_t max_steps = 10000);

struct AuditRow {
  std::string claim;
  std::string params;
  std::string claimed;
  std::string measured;
  bool match = false;
  bool binding = false;  // a mismatch here is an error, not a convention note
  std::string note;
};

// Measured leftmost counts for each decorated reduction of the calculus and
// of the fixed-point constructions, next to the published figure.
std::vector<AuditRow> decoration_audit();

std::string audit_table(const std::vector<AuditRow>& rows);
std::string audit_jsonl(const std::vector<AuditRow>& rows);

}  // namespace asmlc::cosim

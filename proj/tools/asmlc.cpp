#include <fstream>
#include <set>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "asmlc/combinators.hpp"
#include "asmlc/compiler.hpp"
#include "asmlc/cosim.hpp"
#include "asmlc/encodings.hpp"
#include "asmlc/lambda/parse.hpp"
#include "asmlc/lambda/reduce.hpp"
#include "asmlc/normalize.hpp"
#include "asmlc/source.hpp"

using namespace asmlc;

namespace {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kVerdict = 1;  // failing verdict, or a run that did not halt successfully
constexpr int kInput = 2;    // diagnostics, bad arguments

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Machine load(const std::string& path) { return parse_machine(read_file(path)); }

CtorTable ctor_table(const Vocabulary& vocab) {
  CtorTable t;
  for (const auto& s : vocab.sorts()) {
    if (s.carrier.empty() || s.carrier.front().kind() != Value::Kind::Ctor) continue;
    for (const auto& v : s.carrier) t.sorts[s.name].push_back(v.ctor_name());
  }
  return t;
}

// NAME=LITERAL pairs for the machine's inputs.
std::map<std::string, Value> parse_inputs(const Machine& m, const std::vector<std::string>& flags) {
  std::map<std::string, Value> out;
  for (const auto& f : flags) {
    auto eq = f.find('=');
    if (eq == std::string::npos) throw Error("--input expects NAME=VALUE, got " + f);
    std::string name = f.substr(0, eq);
    const Symbol* s = m.vocab.find_symbol(name);
    if (s == nullptr || !s->input) throw Error(name + " is not an input of " + m.name);
    out[name] = parse_literal(m.vocab, s->result_sort, f.substr(eq + 1));
  }
  return out;
}

compiler::CompileOptions compile_options(int hk, int hl, std::optional<int> K, std::optional<int> L) {
  compiler::CompileOptions o;
  o.headroom_K = hk;
  o.headroom_L = hl;
  o.K = K;
  o.L = L;
  return o;
}

// Every input ranges over 1..n for natural-number sorts, the whole carrier
// otherwise.
std::vector<std::map<std::string, Value>> input_grid(const Machine& m, std::uint64_t n) {
  std::vector<std::map<std::string, Value>> grid{{}};
  for (const auto* in : m.vocab.inputs()) {
    std::vector<Value> values;
    for (const auto& v : m.vocab.sort(in->result_sort).carrier) {
      if (v.kind() != Value::Kind::Nat || (v.as_nat() >= 1 && v.as_nat() <= n)) values.push_back(v);
    }
    std::vector<std::map<std::string, Value>> next;
    for (const auto& row : grid) {
      for (const auto& v : values) {
        auto r = row;
        r[in->name] = v;
        next.push_back(std::move(r));
      }
    }
    grid = std::move(next);
  }
  return grid;
}

std::string inputs_text(const std::map<std::string, Value>& in) {
  std::string out;
  for (const auto& [k, v] : in) out += (out.empty() ? "" : " ") + k + "=" + literal_text(v);
  return out.empty() ? "(no inputs)" : out;
}

int cmd_parse(const std::string& file) {
  std::cout << print_machine(load(file));
  return kOk;
}

int cmd_run(const std::string& file, const std::vector<std::string>& inputs, std::size_t max_steps, bool jsonl) {
  Machine m = load(file);
  State s0 = initial_state(m, parse_inputs(m, inputs));
  RunResult r = run(m, s0, max_steps);
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
    if (jsonl) {
      std::cout << trajectory_record(m.vocab, i, r.trajectory[i]) << "\n";
    } else {
      std::cout << "step " << i << ": " << cosim::state_digest(m.vocab, r.trajectory[i]) << "\n";
    }
  }
  std::cout << "outcome: " << outcome_name(r.outcome) << "\n";
  std::cout << "steps: " << r.steps << "\n";
  if (r.success()) std::cout << "output: " << outputs_to_string(r.outputs) << "\n";
  if (r.clash) std::cout << "clash: " << r.clash->first.to_string() << " vs " << r.clash->second.to_string() << "\n";
  return r.success() ? kOk : kVerdict;
}

int cmd_normalize(const std::string& file) {
  Machine m = load(file);
  std::cout << normalize(m.program).to_string() << "\n";
  return kOk;
}

int cmd_compile(const std::string& file, const compiler::CompileOptions& opts, bool no_theta) {
  auto cm = compiler::compile(load(file), opts);
  std::string man = compiler::manifest(cm);
  if (no_theta) man = man.substr(0, man.find("theta: "));
  std::cout << man;
  return kOk;
}

int cmd_verify(const std::string& file, const compiler::CompileOptions& opts, const std::vector<std::string>& inputs,
               std::optional<std::uint64_t> grid, std::size_t max_steps, bool jsonl) {
  Machine m = load(file);
  auto cm = compiler::compile(m, opts);
  std::vector<std::map<std::string, Value>> runs;
  if (grid) {
    runs = input_grid(m, *grid);
  } else {
    runs.push_back(parse_inputs(m, inputs));
  }
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
  std::set<std::pair<std::uint64_t, std::uint64_t>> costs;
  for (const auto& in : runs) {
    auto rep = cosim::lockstep(cm, in, max_steps);
    for (const auto& c : rep.costs()) costs.insert(c);
    switch (rep.verdict) {
      case cosim::LockstepReport::Verdict::Pass: ++pass; break;
      case cosim::LockstepReport::Verdict::Fail: ++fail; break;
      case cosim::LockstepReport::Verdict::Inconclusive: ++inconclusive; break;
    }
    if (jsonl) {
      std::cout << rep.to_jsonl();
    } else if (runs.size() == 1) {
      std::cout << rep.summary();
    } else if (!rep.pass()) {
      std::cout << inputs_text(in) << ": " << cosim::verdict_name(rep.verdict) << " (" << rep.reason << ")\n";
    }
  }
  const bool one_pair = costs.size() <= 1;
  const bool ok = fail == 0 && inconclusive == 0 && one_pair;
  std::cout << "runs: " << runs.size() << "  pass: " << pass << "  fail: " << fail
            << "  inconclusive: " << inconclusive << "\n";
  std::cout << "K: " << cm.K() << "  L: " << cm.L() << "  (K_min " << cm.comb.K_min << ", L_min " << cm.comb.L_min
            << ")  per-round pairs seen: " << costs.size() << "\n";
  std::cout << "verdict: " << (ok ? "pass" : "fail") << "\n";
  return ok ? kOk : kVerdict;
}

int cmd_encode(const std::vector<std::string>& args, const std::string& machine_file) {
  if (args.empty()) throw Error("encode: expected a kind (nat, bool, value, case, projection, pad)");
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1) throw Error("encode " + args[0] + ": expected " + std::to_string(n) + " argument(s)");
  };
  auto integer = [](const std::string& s) { return std::stoi(s); };
  const std::string& kind = args[0];
  lambda::Term t;
  if (kind == "nat") {
    need(1);
    t = enc::nat(std::stoull(args[1]));
  } else if (kind == "bool") {
    need(1);
    t = enc::boolean(args[1] == "True" || args[1] == "true");
  } else if (kind == "case") {
    need(1);
    t = enc::case_n(integer(args[1]));
  } else if (kind == "projection") {
    need(2);
    t = enc::projection(integer(args[1]), integer(args[2]));
  } else if (kind == "pad") {
    need(2);
    t = comb::pad({integer(args[1]), integer(args[2])});
  } else if (kind == "value") {
    need(1);
    enc::DatatypeDef d;
    CtorTable ctors;
    if (!machine_file.empty()) {
      ctors = ctor_table(load(machine_file).vocab);
      for (const auto& [sort, names] : ctors.sorts) {
        for (const auto& n : names) d.sorts[sort].push_back({n, {}});
      }
    }
    t = enc::encode_value(d, parse_value(args[1], &ctors));
  } else {
    throw Error("encode: unknown kind " + kind);
  }
  std::cout << t.to_string() << "\n";
  return kOk;
}

int cmd_decode(const std::string& file, const compiler::CompileOptions& opts, const std::vector<std::string>& inputs,
               std::size_t rounds, const std::string& term_text) {
  Machine m = load(file);
  auto cm = compiler::compile(m, opts);
  State s0 = initial_state(m, parse_inputs(m, inputs));
  lambda::Term t;
  if (!term_text.empty()) {
    CtorTable ctors = ctor_table(m.vocab);
    t = lambda::parse_term(term_text, &ctors);
  } else {
    t = compiler::start_term(cm, s0);
    const auto budget = static_cast<std::uint64_t>(cm.K() + cm.L()) * rounds;
    t = lambda::reduce_leftmost_f(t, cm.sig, budget, lambda::TraceMode::CountsOnly).term;
  }
  auto d = compiler::decode_result(t, cm);
  std::cout << compiler::decoded_kind_name(d.kind);
  if (d.kind == compiler::Decoded::Kind::Running) {
    for (std::size_t j = 0; j < cm.slots.size(); ++j) std::cout << " " << cm.slots[j].symbol << "=" << d.slots[j];
  }
  if (d.kind == compiler::Decoded::Kind::Success) {
    for (std::size_t i = 0; i < d.outputs.size(); ++i) {
      std::cout << " " << cm.slots[cm.output_slots[i]].symbol << "=" << d.outputs[i];
    }
  }
  std::cout << "\n";
  return kOk;
}

int cmd_audit(bool jsonl) {
  auto rows = cosim::decoration_audit();
  std::cout << (jsonl ? cosim::audit_jsonl(rows) : cosim::audit_table(rows));
  for (const auto& r : rows) {
    if (r.binding && !r.match) return kVerdict;
  }
  return kOk;
}

int cmd_trace(const std::string& text, const std::string& machine_file, std::uint64_t max_steps, bool quiet) {
  lambda::FSignature sig = lambda::FSignature::booleans();
  CtorTable ctors;
  if (!machine_file.empty()) {
    auto cm = compiler::compile(load(machine_file));
    sig = cm.sig;
    ctors = ctor_table(cm.machine.vocab);
  }
  lambda::Term t = lambda::parse_term(text, &ctors);
  auto r = lambda::reduce_leftmost_f(t, sig, max_steps, quiet ? lambda::TraceMode::CountsOnly : lambda::TraceMode::Full);
  if (!quiet) {
    std::cout << "0: " << t.to_string() << "\n";
    for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
      const auto& s = r.trace.steps[i];
      std::cout << i + 1 << " " << (s.kind == lambda::RedexKind::Beta ? "beta" : "F") << " at "
                << lambda::address_to_string(s.address) << ": " << s.after.to_string() << "\n";
    }
  }
  const char* status = r.status == lambda::ReduceStatus::Normal            ? "normal"
                       : r.status == lambda::ReduceStatus::BudgetExhausted ? "budget exhausted"
                                                                           : "undefined application";
  std::cout << "beta: " << r.trace.beta_count << "  F: " << r.trace.f_count << "  status: " << status << "\n";
  if (quiet) std::cout << r.term.to_string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASM to extended lambda-calculus compiler and lockstep verifier"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> inputs;
  std::size_t max_steps = 10000;
  bool jsonl = false;
  int headroom_k = 0;
  int headroom_l = 0;
  std::optional<int> K;
  std::optional<int> L;
  auto compile_flags = [&](CLI::App* sub) {
    sub->add_option("--headroom-K", headroom_k, "beta-steps per round above the minimum")->check(CLI::NonNegativeNumber);
    sub->add_option("--headroom-L", headroom_l, "F-steps per round above the minimum")->check(CLI::NonNegativeNumber);
    sub->add_option("--K", K, "exact beta-steps per round (overrides headroom)");
    sub->add_option("--L", L, "exact F-steps per round (overrides headroom)");
  };

  auto* parse = app.add_subcommand("parse", "check a source file and print it back");
  parse->add_option("file", file, "ASM source")->required();

  auto* run_cmd = app.add_subcommand("run", "execute a machine and print its trajectory");
  run_cmd->add_option("file", file, "ASM source")->required();
  run_cmd->add_option("--input", inputs, "input binding NAME=VALUE");
  run_cmd->add_option("--max-steps", max_steps, "step limit");
  run_cmd->add_flag("--jsonl", jsonl, "one JSON record per state");

  auto* norm = app.add_subcommand("normalize", "print the guarded normal form of the program");
  norm->add_option("file", file, "ASM source")->required();

  bool no_theta = false;
  auto* comp = app.add_subcommand("compile", "compile to a fixed-point term and print the manifest");
  comp->add_option("file", file, "ASM source")->required();
  comp->add_flag("--no-theta", no_theta, "omit the printed term");
  compile_flags(comp);

  std::optional<std::uint64_t> grid;
  auto* verify = app.add_subcommand("verify", "lockstep the machine against its compiled term");
  verify->add_option("file", file, "ASM source")->required();
  verify->add_option("--input", inputs, "input binding NAME=VALUE");
  verify->add_option("--grid", grid, "run every input combination over 1..N");
  verify->add_option("--max-steps", max_steps, "machine step limit per run");
  verify->add_flag("--jsonl", jsonl, "per-round JSON records");
  compile_flags(verify);

  std::vector<std::string> enc_args;
  std::string machine_file;
  auto* encode = app.add_subcommand("encode", "print the lambda-term of a value or catalog entry");
  encode->add_option("args", enc_args, "nat N | bool B | value LITERAL | case N | projection K I | pad K L")->required();
  encode->add_option("--machine", machine_file, "machine whose enumerated sorts `value` may use");

  std::size_t rounds = 0;
  std::string term_text;
  auto* decode = app.add_subcommand("decode", "decode a snapshot of a compiled run");
  decode->add_option("file", file, "ASM source")->required();
  decode->add_option("--input", inputs, "input binding NAME=VALUE");
  decode->add_option("--rounds", rounds, "snapshot after this many rounds");
  decode->add_option("--term", term_text, "decode this term instead");
  compile_flags(decode);

  auto* audit = app.add_subcommand("audit", "measure the decorated reductions");
  audit->add_flag("--jsonl", jsonl, "one JSON record per row");

  std::string trace_term;
  std::uint64_t trace_steps = 1000;
  bool quiet = false;
  auto* trace = app.add_subcommand("trace", "print the leftmost reduction of a term step by step");
  trace->add_option("term", trace_term, "lambda-term")->required();
  trace->add_option("--machine", machine_file, "use the compiled signature of this machine");
  trace->add_option("--max-steps", trace_steps, "step limit");
  trace->add_flag("--quiet", quiet, "counts and final term only");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto opts = compile_options(headroom_k, headroom_l, K, L);
    if (*parse) return cmd_parse(file);
    if (*run_cmd) return cmd_run(file, inputs, max_steps, jsonl);
    if (*norm) return cmd_normalize(file);
    if (*comp) return cmd_compile(file, opts, no_theta);
    if (*verify) return cmd_verify(file, opts, inputs, grid, max_steps, jsonl);
    if (*encode) return cmd_encode(enc_args, machine_file);
    if (*decode) return cmd_decode(file, opts, inputs, rounds, term_text);
    if (*audit) return cmd_audit(jsonl);
    if (*trace) return cmd_trace(trace_term, machine_file, trace_steps, quiet);
  } catch (const SourceError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << file << ":" << d.to_string() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}

// Copyright 2026 The Fullgen SMT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smtctl.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "smt/adversary.h"
#include "smt/feasibility.h"
#include "smt/field.h"
#include "smt/oneway.h"
#include "smt/protocol.h"
#include "smt/rng.h"
#include "smt/strategies.h"
#include "smt/structure_json.h"
#include "smt/twoway.h"
#include "smt/verification.h"

namespace smt::cli {
namespace {

constexpr int kMaxGenWires = 16;
constexpr uint64_t kMaxGenPairs = 1'000'000;

using Json = nlohmann::ordered_json;

void Emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int Fail(std::ostream& err, int code, const std::string& message) {
  err << "smtctl: " << message << "\n";
  return code;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::StatusOr<AdversaryStructure> LoadStructure(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<AdversaryStructure> a = ParseStructureJson(*text);
  if (!a.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", std::string(a.status().message())));
  }
  return a;
}

// The protocol for `setting`; FailedPrecondition when infeasible.
absl::StatusOr<std::unique_ptr<Protocol>> PlanFor(
    const AdversaryStructure& a, Setting setting, bool inject_fault) {
  switch (setting) {
    case Setting::kOneWay: {
      auto p = OneWayProtocol::Plan(a, {.inject_fault = inject_fault});
      if (!p.ok()) return p.status();
      return std::unique_ptr<Protocol>(*std::move(p));
    }
    case Setting::kTwoWay: {
      auto p = TwoWayProtocol::Plan(a, {.inject_fault = inject_fault});
      if (!p.ok()) return p.status();
      return std::unique_ptr<Protocol>(*std::move(p));
    }
    case Setting::kTwoRoundNonCompletelyOblivious: {
      auto p = TwoWayProtocol::PlanNonCompletelyOblivious(
          a, {.inject_fault = inject_fault});
      if (!p.ok()) return p.status();
      return std::unique_ptr<Protocol>(*std::move(p));
    }
  }
  return absl::InternalError("unknown setting");
}

// Shared front half of simulate and verify: load, check, plan.
struct Loaded {
  AdversaryStructure structure;
  Setting setting = Setting::kOneWay;
  std::unique_ptr<Protocol> protocol;
};

int LoadAndPlan(const std::string& path, const std::string& setting_name,
                bool inject_fault, Loaded& loaded, std::ostream& out,
                std::ostream& err) {
  absl::StatusOr<AdversaryStructure> a = LoadStructure(path);
  if (!a.ok()) return Fail(err, kBadInput, std::string(a.status().message()));
  absl::StatusOr<Setting> setting = ParseSetting(setting_name);
  if (!setting.ok()) {
    return Fail(err, kBadInput, std::string(setting.status().message()));
  }
  const FeasibilityReport report = CheckFeasibility(*a, *setting);
  if (!report.feasible) {
    Emit(out, ReportToJson(report));
    return Fail(err, kInfeasible,
                absl::StrCat("structure is infeasible for ", setting_name));
  }
  absl::StatusOr<std::unique_ptr<Protocol>> p =
      PlanFor(*a, *setting, inject_fault);
  if (!p.ok()) return Fail(err, kBadInput, std::string(p.status().message()));
  loaded.structure = *std::move(a);
  loaded.setting = *setting;
  loaded.protocol = *std::move(p);
  return kOk;
}

absl::StatusOr<Field> FieldFor(uint64_t prime, const Protocol& protocol) {
  absl::StatusOr<Field> f = Field::Create(prime);
  if (!f.ok()) return f.status();
  if (prime < protocol.min_modulus()) {
    return absl::InvalidArgumentError(
        absl::StrCat("the ", protocol.name(), " protocol needs p >= ",
                     protocol.min_modulus()));
  }
  return f;
}

int CmdCheck(const std::string& path, const std::string& setting_name,
             std::ostream& out, std::ostream& err) {
  absl::StatusOr<AdversaryStructure> a = LoadStructure(path);
  if (!a.ok()) return Fail(err, kBadInput, std::string(a.status().message()));
  absl::StatusOr<Setting> setting = ParseSetting(setting_name);
  if (!setting.ok()) {
    return Fail(err, kBadInput, std::string(setting.status().message()));
  }
  const FeasibilityReport report = CheckFeasibility(*a, *setting);
  Emit(out, ReportToJson(report));
  return report.feasible ? kOk : kInfeasible;
}

struct SimulateArgs {
  uint64_t message = 0;
  uint64_t seed = 1;
  uint64_t prime = 2147483647;
  size_t pair = 0;  // 1-based; 0 means no adversary
  std::string behavior = "passive";
};

int CmdSimulate(const std::string& path, const std::string& setting_name,
                const SimulateArgs& args, std::ostream& out,
                std::ostream& err) {
  Loaded l;
  if (int rc = LoadAndPlan(path, setting_name, false, l, out, err);
      rc != kOk) {
    return rc;
  }
  absl::StatusOr<Field> field = FieldFor(args.prime, *l.protocol);
  if (!field.ok()) {
    return Fail(err, kBadInput, std::string(field.status().message()));
  }
  std::unique_ptr<Adversary> adversary;
  if (args.pair > 0) {
    if (args.pair > l.structure.size()) {
      return Fail(err, kBadInput,
                  absl::StrCat("--pair must be in 1..", l.structure.size()));
    }
    absl::StatusOr<std::unique_ptr<Strategy>> s =
        StrategyByName(args.behavior);
    if (!s.ok()) return Fail(err, kBadInput, std::string(s.status().message()));
    adversary = std::make_unique<Adversary>(
        l.protocol->structure(), args.pair - 1, *std::move(s),
        DeriveStream(args.seed, {}, "adversary").Next());
  }
  SeededTape sender(DeriveStream(args.seed, {}, "sender").Next());
  SeededTape receiver(DeriveStream(args.seed, {}, "receiver").Next());
  absl::StatusOr<ExecutionOutcome> outcome = l.protocol->Run(
      *field, args.message, sender, receiver, adversary.get());
  if (!outcome.ok()) {
    return Fail(err, kBadInput, std::string(outcome.status().message()));
  }
  Json j;
  j["setting"] = SettingName(l.setting);
  j["protocol"] = l.protocol->name();
  j["prime"] = args.prime;
  j["seed"] = args.seed;
  j["message"] = field->Reduce(args.message);
  j["decoded"] = outcome->decoded.has_value() ? Json(*outcome->decoded)
                                              : Json(nullptr);
  if (!outcome->failure.empty()) j["failure"] = outcome->failure;
  j["rounds"] = outcome->rounds;
  if (adversary != nullptr) j["behavior"] = args.behavior;
  j["transcript"] = outcome->transcript.ToJson();
  Emit(out, j);
  return kOk;
}

struct VerifyArgs {
  std::string mode;
  uint64_t budget = 20'000'000;
  uint64_t prime = 5;
  uint64_t trials = 100'000;
  uint64_t seed = 1;
  bool inject_fault = false;
};

int CmdVerify(const std::string& path, const std::string& setting_name,
              const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.mode != "privacy" && args.mode != "reliability") {
    return Fail(err, kBadInput, "--mode must be privacy or reliability");
  }
  Loaded l;
  if (int rc = LoadAndPlan(path, setting_name, args.inject_fault, l, out, err);
      rc != kOk) {
    return rc;
  }
  absl::StatusOr<Field> field = FieldFor(args.prime, *l.protocol);
  if (!field.ok()) {
    return Fail(err, kBadInput, std::string(field.status().message()));
  }
  if (args.mode == "reliability") {
    ReliabilityOptions o;
    o.budget = args.budget;
    o.random_trials = args.trials;
    o.seed = args.seed;
    const ReliabilityReport r = VerifyReliability(*l.protocol, *field, o);
    Emit(out, ReliabilityToJson(r));
    return r.ok() ? kOk : kVerificationFailed;
  }
  PrivacyOptions o;
  o.budget = args.budget;
  const PrivacyReport r = VerifyPrivacy(*l.protocol, *field, o);
  Emit(out, PrivacyToJson(r));
  if (r.refused) return Fail(err, kBudgetRefused, r.refusal);
  return r.ok() ? kOk : kVerificationFailed;
}

struct AttackArgs {
  uint64_t m1 = 0;
  uint64_t m2 = 1;
  int round_cap = 2;
  uint64_t prime = 5;
  uint64_t node_budget = 2'000'000;
};

int CmdAttack(const std::string& path, const std::string& setting_name,
              const AttackArgs& args, std::ostream& out, std::ostream& err) {
  absl::StatusOr<AdversaryStructure> a = LoadStructure(path);
  if (!a.ok()) return Fail(err, kBadInput, std::string(a.status().message()));
  absl::StatusOr<Setting> setting = ParseSetting(setting_name);
  if (!setting.ok()) {
    return Fail(err, kBadInput, std::string(setting.status().message()));
  }
  absl::StatusOr<Field> field = Field::Create(args.prime);
  if (!field.ok()) {
    return Fail(err, kBadInput, std::string(field.status().message()));
  }
  if (field->Reduce(args.m1) == field->Reduce(args.m2)) {
    return Fail(err, kBadInput, "m1 and m2 must differ mod p");
  }
  if (args.round_cap < 1) return Fail(err, kBadInput, "--round-cap must be >= 1");
  const FeasibilityReport report = CheckFeasibility(*a, *setting);
  if (report.feasible) {
    Emit(out, ReportToJson(report));
    return Fail(err, kInfeasible,
                absl::StrCat("structure is feasible for ", setting_name,
                             "; nothing to attack"));
  }
  absl::StatusOr<AttackResult> r =
      AttackStructure(*a, *setting, *field, args.m1, args.m2,
                      {.round_cap = args.round_cap,
                       .node_budget = args.node_budget});
  if (!r.ok()) {
    const absl::StatusCode c = r.status().code();
    const int code = c == absl::StatusCode::kResourceExhausted ||
                             c == absl::StatusCode::kNotFound
                         ? kSearchExhausted
                         : kBadInput;
    return Fail(err, code, std::string(r.status().message()));
  }
  absl::StatusOr<WitnessCheck> check =
      VerifyWitness(*r->protocol, *field, r->witness);
  if (!check.ok()) {
    return Fail(err, kVerificationFailed,
                std::string(check.status().message()));
  }
  Json j = WitnessToJson(r->witness, *check);
  // Report pairs by their index in the input structure.
  Json pairs = Json::array();
  for (size_t p : r->witness.pairs) pairs.push_back(r->pair_map[p] + 1);
  j["pairs"] = std::move(pairs);
  for (size_t e = 0; e < 2; ++e) {
    j["executions"][e]["pair_index"] =
        r->pair_map[r->witness.executions[e].pair] + 1;
  }
  Json doc;
  doc["setting"] = SettingName(*setting);
  doc["protocol"] = r->protocol->name();
  doc["prime"] = args.prime;
  doc["cover"] = ReportToJson(report)["witness"];
  for (auto& [k, v] : j.items()) doc[k] = v;
  Emit(out, doc);
  return check->ok() ? kOk : kVerificationFailed;
}

uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

absl::StatusOr<AdversaryStructure> GenGeneral(int n, const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  nlohmann::json doc = nlohmann::json::parse(*text, nullptr, false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": not valid JSON"));
  }
  // Either a bare array of sets or {"sets": [...]}.
  const nlohmann::json& sets = doc.is_object() && doc.contains("sets")
                                   ? doc["sets"]
                                   : doc;
  if (!sets.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": expected an array of wire lists"));
  }
  std::vector<WireSet> out;
  for (size_t i = 0; i < sets.size(); ++i) {
    if (!sets[i].is_array()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": sets[", i, "] is not an array"));
    }
    std::vector<int> wires;
    for (const auto& w : sets[i]) {
      if (!w.is_number_integer()) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ": sets[", i, "] holds a non-integer"));
      }
      wires.push_back(w.get<int>());
    }
    absl::StatusOr<WireSet> s = WireSet::FromOneBased(n, wires);
    if (!s.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ": sets[", i, "]: ", std::string(s.status().message())));
    }
    out.push_back(*s);
  }
  return GeneralStructure(n, out);
}

struct GenArgs {
  std::string kind;
  std::vector<std::string> params;
  std::string mode = "completely_oblivious";
};

int CmdGen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  auto param = [&](size_t i, int& v) {
    if (i >= args.params.size()) return false;
    try {
      size_t used = 0;
      v = std::stoi(args.params[i], &used);
      return used == args.params[i].size();
    } catch (const std::exception&) {
      return false;
    }
  };
  absl::StatusOr<ObliviousnessMode> mode = ParseMode(args.mode);
  if (!mode.ok()) {
    return Fail(err, kBadInput, std::string(mode.status().message()));
  }
  int n = 0;
  if (!param(0, n)) return Fail(err, kBadInput, "gen: missing wire count");
  if (n < 1 || n > kMaxGenWires) {
    return Fail(err, kBadInput,
                absl::StrCat("gen: wire count must be in 1..", kMaxGenWires));
  }
  absl::StatusOr<AdversaryStructure> a;
  if (args.kind == "threshold") {
    int k = 0;
    if (args.params.size() != 2 || !param(1, k)) {
      return Fail(err, kBadInput, "usage: gen threshold N K");
    }
    if (Binomial(n, k) > kMaxGenPairs) {
      return Fail(err, kBadInput, "gen: too many pairs");
    }
    a = ThresholdStructure(n, k);
  } else if (args.kind == "dl") {
    int d = 0, l = 0;
    if (args.params.size() != 3 || !param(1, d) || !param(2, l)) {
      return Fail(err, kBadInput, "usage: gen dl N D L");
    }
    if (Binomial(n, d) * Binomial(n, l) > kMaxGenPairs) {
      return Fail(err, kBadInput, "gen: too many pairs");
    }
    a = DlStructure(n, d, l);
  } else if (args.kind == "general") {
    if (args.params.size() != 2) {
      return Fail(err, kBadInput, "usage: gen general N SETS_FILE");
    }
    a = GenGeneral(n, args.params[1]);
  } else {
    return Fail(err, kBadInput,
                "gen: kind must be threshold, dl or general");
  }
  if (!a.ok()) return Fail(err, kBadInput, std::string(a.status().message()));
  Emit(out, StructureToJson(a->WithMode(*mode)));
  return kOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Secure message transmission against general adversaries",
               "smtctl"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand every subcommand's help");

  std::string file, setting;
  auto add_target = [&](CLI::App* sub) {
    sub->add_option("structure", file, "Structure JSON file ('-' for stdin)")
        ->required();
    sub->add_option("setting", setting, "oneway, twoway or tworound_nco")
        ->required();
  };

  CLI::App* check = app.add_subcommand("check", "Decide feasibility");
  add_target(check);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run one execution");
  add_target(simulate);
  simulate->add_option("-m,--message", sim.message, "Message to send");
  simulate->add_option("-s,--seed", sim.seed, "Seed for every random stream");
  simulate->add_option("-p,--prime", sim.prime, "Field modulus");
  simulate->add_option("--pair", sim.pair,
                       "Adversary pair index, 1-based (0: no adversary)");
  simulate->add_option("--behavior", sim.behavior,
                       "passive, noise, offset or replace_heard");

  VerifyArgs ver;
  CLI::App* verify =
      app.add_subcommand("verify", "Check privacy or reliability");
  add_target(verify);
  verify->add_option("--mode", ver.mode, "privacy or reliability")->required();
  verify->add_option("--budget", ver.budget, "Execution budget");
  verify->add_option("-p,--prime", ver.prime, "Field modulus");
  verify->add_option("--trials", ver.trials,
                     "Random executions when a sweep cannot be exhaustive");
  verify->add_option("-s,--seed", ver.seed, "Seed for random trials");
  verify->add_flag("--inject-fault", ver.inject_fault,
                   "Plan a deliberately broken protocol (negative control)");

  AttackArgs att;
  CLI::App* attack =
      app.add_subcommand("attack", "Find a witness against an infeasible "
                                   "structure");
  add_target(attack);
  attack->add_option("--m1", att.m1, "First message");
  attack->add_option("--m2", att.m2, "Second message");
  attack->add_option("--round-cap", att.round_cap,
                     "Compare receiver inputs over rounds 1..cap");
  attack->add_option("-p,--prime", att.prime, "Field modulus");
  attack->add_option("--node-budget", att.node_budget, "Tape search nodes");

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a structure");
  gen_cmd->add_option("kind", gen.kind, "threshold, dl or general")
      ->required();
  gen_cmd->add_option("params", gen.params,
                      "threshold: N K; dl: N D L; general: N SETS_FILE")
      ->required();
  gen_cmd->add_option("--mode", gen.mode,
                      "completely_oblivious, oblivious or non_oblivious");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return Fail(err, kBadInput, e.what());
  }

  if (check->parsed()) return CmdCheck(file, setting, out, err);
  if (simulate->parsed()) return CmdSimulate(file, setting, sim, out, err);
  if (verify->parsed()) return CmdVerify(file, setting, ver, out, err);
  if (attack->parsed()) return CmdAttack(file, setting, att, out, err);
  if (gen_cmd->parsed()) return CmdGen(gen, out, err);
  return Fail(err, kBadInput, "no command");
}

}  // namespace smt::cli

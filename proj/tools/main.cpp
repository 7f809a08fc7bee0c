// Command-line front end: run / verify / campaign / replay.
// Exit codes: 0 success, 1 property or bound violation, 2 configuration error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dring/harness.hpp"

namespace {

dring::ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dring::ConfigError("cannot open config file: " + path);
  dring::ordered_json j = dring::ordered_json::parse(in, nullptr, false);
  if (j.is_discarded()) throw dring::ConfigError("config is not valid JSON: " + path);
  return dring::parse_config(j);
}

void print_result(const dring::RunResult& r) {
  std::cout << "rounds executed: " << r.roundsExecuted << "\n";
  std::cout << "explored round: "
            << (r.exploredRound ? std::to_string(*r.exploredRound) : "never")
            << "\n";
  for (size_t i = 0; i < r.terminations.size(); ++i)
    std::cout << "agent " << i << " terminated: "
              << (r.terminations[i] ? std::to_string(*r.terminations[i]) : "never")
              << " (moves " << r.perAgentMoves[i] << ")\n";
  std::cout << "total moves: " << r.totalMoves << "\n";
  std::cout << "trace digest: " << std::hex << r.traceDigest << std::dec << "\n";
  for (const auto& v : r.violations)
    std::cout << "violation @" << v.round << " " << v.kind << ": " << v.detail
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic-ring exploration simulator"};
  app.require_subcommand(1);

  std::string configPath, tracePath, outPath, traceFile;
  std::uint64_t seed = 0;
  bool seedSet = false;
  long horizon = 0, trials = 1000;
  double budget = 1e18;

  auto* runCmd = app.add_subcommand("run", "execute one configured run");
  runCmd->add_option("config", configPath, "config file (JSON)")->required();
  runCmd->add_option("--trace", tracePath, "write a JSONL trace");
  runCmd->add_option("--seed", seed, "override the adversary seed")
      ->each([&](const std::string&) { seedSet = true; });

  auto* verifyCmd =
      app.add_subcommand("verify", "exhaustive edge-schedule verification");
  verifyCmd->add_option("config", configPath, "config file (JSON)")->required();
  verifyCmd->add_option("--horizon", horizon, "schedule length")->required();
  verifyCmd->add_option("--budget", budget, "refuse if (n+1)^H exceeds this");

  auto* campCmd = app.add_subcommand("campaign", "randomized campaign");
  campCmd->add_option("config", configPath, "config template (JSON)")->required();
  campCmd->add_option("--trials", trials, "number of runs");
  campCmd->add_option("--out", outPath, "CSV output path");
  campCmd->add_option("--seed", seed, "base seed");

  auto* replayCmd = app.add_subcommand("replay", "re-execute a recorded trace");
  replayCmd->add_option("trace", traceFile, "trace file (JSONL)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*runCmd) {
      auto cfg = load_config(configPath);
      if (seedSet) cfg.seed = seed;
      std::ofstream traceOut;
      if (!tracePath.empty()) {
        traceOut.open(tracePath);
        if (!traceOut) throw dring::ConfigError("cannot open " + tracePath);
      }
      auto res = dring::run_experiment(cfg, tracePath.empty() ? nullptr : &traceOut);
      print_result(res);
      return res.violations.empty() ? 0 : 1;
    }

    if (*verifyCmd) {
      auto cfg = load_config(configPath);
      auto rep = dring::exhaustive_verify(cfg, horizon, budget);
      std::cout << "states visited: " << rep.statesVisited << "\n";
      std::cout << "worst explored round: "
                << (rep.worstExploredRound ? std::to_string(*rep.worstExploredRound)
                                           : "none")
                << "\n";
      std::cout << "worst termination round: "
                << (rep.worstTerminationRound
                        ? std::to_string(*rep.worstTerminationRound)
                        : "none")
                << "\n";
      std::cout << "all explored by horizon: " << rep.allExploredByHorizon << "\n";
      std::cout << "all terminated by horizon: " << rep.allTerminatedByHorizon
                << "\n";
      std::cout << "soundness violations: " << rep.soundnessViolations << "\n";
      std::cout << "invariant violations: " << rep.invariantViolations << "\n";
      if (!rep.witnessSchedule.empty()) {
        std::cout << "witness schedule:";
        for (const auto& e : rep.witnessSchedule)
          std::cout << ' ' << (e ? std::to_string(*e) : std::string("-"));
        std::cout << "\n";
      }
      return rep.soundnessViolations == 0 && rep.invariantViolations == 0 ? 0 : 1;
    }

    if (*campCmd) {
      auto cfg = load_config(configPath);
      auto [rows, sum] = dring::campaign(cfg, trials, seed);
      if (!outPath.empty()) {
        std::ofstream out(outPath);
        if (!out) throw dring::ConfigError("cannot open " + outPath);
        dring::write_campaign_csv(out, rows);
      } else {
        dring::write_campaign_csv(std::cout, rows);
      }
      std::cout << "trials: " << sum.trials << "\n";
      std::cout << "max explored round: "
                << (sum.maxExploredRound ? std::to_string(*sum.maxExploredRound)
                                         : "none")
                << " (mean " << sum.meanExploredRound << ")\n";
      std::cout << "max total moves: " << sum.maxTotalMoves << "\n";
      std::cout << "runs with violations: " << sum.runsWithViolations << "\n";
      return sum.runsWithViolations == 0 ? 0 : 1;
    }

    if (*replayCmd) {
      std::ifstream in(traceFile);
      if (!in) throw dring::ConfigError("cannot open " + traceFile);
      auto res = dring::replay_trace(in);
      print_result(res);
      return res.violations.empty() ? 0 : 1;
    }
  } catch (const dring::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dring::ReplayError& e) {
    std::cerr << "replay error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

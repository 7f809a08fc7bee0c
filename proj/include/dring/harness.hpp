#ifndef DRING_HARNESS_HPP
#define DRING_HARNESS_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "dring/adversary.hpp"
#include "dring/algorithms.hpp"
#include "dring/model.hpp"
#include "dring/protocol.hpp"

namespace dring {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  RingTopology topology{3, std::nullopt};
  ExecutionModel model;
  std::string algorithmName = "known-n-with-chirality";
  long algorithmParam = 0;
  std::vector<int> starts;
  std::vector<int> orientations;
  std::string adversaryName = "none";
  AdversaryParams adversaryParams;
  std::uint64_t seed = 0;
  long horizon = 100;
  bool trace = false;
  bool force = false;  // skip requirement checks (negative/impossibility runs)
};

inline Synchrony parse_synchrony(const std::string& s) {
  if (s == "fsync") return Synchrony::FSYNC;
  if (s == "ssync") return Synchrony::SSYNC;
  throw ConfigError("model.synchrony: expected fsync|ssync, got '" + s + "'");
}

inline Transport parse_transport(const std::string& s) {
  if (s == "pt") return Transport::PT;
  if (s == "et") return Transport::ET;
  if (s == "ns") return Transport::NS;
  throw ConfigError("model.transport: expected pt|et|ns, got '" + s + "'");
}

inline const char* to_string(Synchrony s) {
  return s == Synchrony::FSYNC ? "fsync" : "ssync";
}
inline const char* to_string(Transport t) {
  switch (t) {
    case Transport::PT: return "pt";
    case Transport::ET: return "et";
    default: return "ns";
  }
}

/// Checks the config against the algorithm's stated requirements.
/// Returns diagnostics; empty means acceptable.
inline std::vector<std::string> config_diagnostics(const ExperimentConfig& c) {
  std::vector<std::string> out;
  std::shared_ptr<const AlgorithmSpec> alg;
  try {
    alg = make_algorithm(c.algorithmName, c.algorithmParam);
  } catch (const std::exception& e) {
    out.push_back(std::string("algorithm.name: ") + e.what());
    return out;
  }
  if (static_cast<int>(c.starts.size()) != alg->requiredAgents)
    out.push_back("agents.starts: " + c.algorithmName + " needs exactly " +
                  std::to_string(alg->requiredAgents) + " agents, got " +
                  std::to_string(c.starts.size()));
  if (c.starts.size() != c.orientations.size())
    out.push_back("agents.orientations: length must match agents.starts");
  if (alg->requiresChirality) {
    for (size_t i = 1; i < c.orientations.size(); ++i)
      if (c.orientations[i] != c.orientations[0]) {
        out.push_back("agents.orientations: " + c.algorithmName +
                      " assumes chirality (all orientations equal)");
        break;
      }
  }
  if (alg->requiresLandmark && !c.topology.landmark)
    out.push_back("topology.landmark: " + c.algorithmName + " needs a landmark");
  if (alg->requiredSynchrony && *alg->requiredSynchrony != c.model.synchrony &&
      // Running a semi-synchronous analysis fully synchronously is harmless;
      // the converse weakens the algorithm's assumptions.
      !(c.model.synchrony == Synchrony::FSYNC))
    out.push_back("model.synchrony: " + c.algorithmName + " assumes " +
                  std::string(to_string(*alg->requiredSynchrony)));
  if (alg->requiredTransport && c.model.synchrony == Synchrony::SSYNC &&
      c.model.transport != *alg->requiredTransport)
    out.push_back("model.transport: " + c.algorithmName + " assumes " +
                  std::string(to_string(*alg->requiredTransport)));
  if (c.horizon < 1) out.push_back("horizon: must be >= 1");
  if (c.model.fairnessWindow < 1) out.push_back("model.fairnessWindow: must be >= 1");
  return out;
}

inline ExperimentConfig parse_config(const ordered_json& j) {
  ExperimentConfig c;
  try {
    const auto& t = j.at("topology");
    std::optional<int> lm;
    if (t.contains("landmark") && !t.at("landmark").is_null())
      lm = t.at("landmark").get<int>();
    c.topology = RingTopology(t.at("n").get<int>(), lm);

    if (j.contains("model")) {
      const auto& m = j.at("model");
      if (m.contains("synchrony"))
        c.model.synchrony = parse_synchrony(m.at("synchrony").get<std::string>());
      if (m.contains("transport"))
        c.model.transport = parse_transport(m.at("transport").get<std::string>());
      if (m.contains("fairnessWindow"))
        c.model.fairnessWindow = m.at("fairnessWindow").get<int>();
    }

    const auto& a = j.at("algorithm");
    c.algorithmName = a.at("name").get<std::string>();
    if (a.contains("param")) c.algorithmParam = a.at("param").get<long>();

    const auto& ag = j.at("agents");
    c.starts = ag.at("starts").get<std::vector<int>>();
    c.orientations = ag.at("orientations").get<std::vector<int>>();

    if (j.contains("adversary")) {
      const auto& adv = j.at("adversary");
      c.adversaryName = adv.value("name", std::string("none"));
      c.adversaryParams.edge = adv.value("edge", 0);
      c.adversaryParams.pMissing = adv.value("pMissing", 0.8);
      c.adversaryParams.nSmall = adv.value("nSmall", 0);
      c.adversaryParams.large = adv.value("large", false);
      c.seed = adv.value("seed", std::uint64_t{0});
    }
    c.horizon = j.value("horizon", 100L);
    c.trace = j.value("trace", false);
    c.force = j.value("force", false);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  auto diags = config_diagnostics(c);
  if (!diags.empty() && !c.force) {
    std::string msg = "invalid config:";
    for (const auto& d : diags) msg += "\n  - " + d;
    throw ConfigError(msg);
  }
  return c;
}

inline ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["topology"]["n"] = c.topology.n;
  if (c.topology.landmark) j["topology"]["landmark"] = *c.topology.landmark;
  else j["topology"]["landmark"] = nullptr;
  j["model"]["synchrony"] = to_string(c.model.synchrony);
  j["model"]["transport"] = to_string(c.model.transport);
  j["model"]["fairnessWindow"] = c.model.fairnessWindow;
  j["algorithm"]["name"] = c.algorithmName;
  j["algorithm"]["param"] = c.algorithmParam;
  j["agents"]["starts"] = c.starts;
  j["agents"]["orientations"] = c.orientations;
  j["adversary"]["name"] = c.adversaryName;
  j["adversary"]["edge"] = c.adversaryParams.edge;
  j["adversary"]["pMissing"] = c.adversaryParams.pMissing;
  j["adversary"]["nSmall"] = c.adversaryParams.nSmall;
  j["adversary"]["large"] = c.adversaryParams.large;
  j["adversary"]["seed"] = c.seed;
  j["horizon"] = c.horizon;
  j["trace"] = c.trace;
  j["force"] = c.force;
  return j;
}

// ---------------------------------------------------------------------------
// Run results and traces
// ---------------------------------------------------------------------------

struct RunResult {
  std::optional<long> exploredRound;                 // 1-based
  std::vector<std::optional<long>> terminations;     // 1-based, per agent
  long totalMoves = 0;
  std::vector<long> perAgentMoves;
  std::vector<Violation> violations;
  std::uint64_t traceDigest = 0;
  long roundsExecuted = 0;
  long meetingEvents = 0, catchesEvents = 0, catchedEvents = 0;

  bool allTerminated() const {
    for (const auto& t : terminations)
      if (!t) return false;
    return !terminations.empty();
  }
  std::optional<long> firstTermination() const {
    std::optional<long> out;
    for (const auto& t : terminations)
      if (t && (!out || *t < *out)) out = t;
    return out;
  }
  std::optional<long> lastTermination() const {
    if (!allTerminated()) return std::nullopt;
    long out = 0;
    for (const auto& t : terminations) out = std::max(out, *t);
    return out;
  }
};

struct Fnv64 {
  std::uint64_t h = 1469598103934665603ULL;
  void byte(std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(long long v) { u64(static_cast<std::uint64_t>(v)); }
};

namespace harnessdetail {

inline void digest_round(Fnv64& f, const Configuration& cfg,
                         const AdversaryDecision& d) {
  f.i64(cfg.round);
  f.i64(d.missingEdge ? *d.missingEdge : -1);
  for (int i : d.activeSet) f.i64(i);
  for (const auto& a : cfg.agents) {
    f.i64(a.node);
    f.i64(static_cast<int>(a.slot));
    f.byte(a.moved);
    f.byte(a.terminated);
  }
}

inline ordered_json agent_record(const AgentPhysical& a, const ProgramState& ps) {
  ordered_json r;
  r["node"] = a.node;
  r["slot"] = to_string(a.slot);
  r["state"] = a.terminated || ps.state == kTerminate
                   ? "Terminate"
                   : ps.algorithm->states[static_cast<size_t>(ps.state)].name;
  r["moved"] = a.moved;
  r["Ttime"] = ps.counters.Ttime;
  r["Tsteps"] = ps.counters.Tsteps;
  r["Etime"] = ps.counters.Etime;
  r["Esteps"] = ps.counters.Esteps;
  r["Btime"] = ps.counters.Btime;
  r["Ntime"] = ps.counters.Ntime;
  return r;
}

inline ordered_json round_record(long round, const AdversaryDecision& d,
                                 const Configuration& cfg,
                                 const std::vector<ProgramState>& programs,
                                 const std::vector<Event>& events) {
  ordered_json r;
  r["round"] = round;
  if (d.missingEdge) r["missing"] = *d.missingEdge;
  else r["missing"] = nullptr;
  r["active"] = d.activeSet;
  r["agents"] = ordered_json::array();
  for (size_t i = 0; i < cfg.agents.size(); ++i)
    r["agents"].push_back(agent_record(cfg.agents[i], programs[i]));
  r["events"] = ordered_json::array();
  for (const auto& e : events) {
    ordered_json ev;
    ev["type"] = to_string(e.type);
    ev["agent"] = e.agent;
    if (e.aux >= 0) ev["edge"] = e.aux;
    r["events"].push_back(ev);
  }
  return r;
}

}  // namespace harnessdetail

/// Decision source: either a live strategy or a recorded schedule (replay).
using DecisionSource = std::function<AdversaryDecision(const AdversaryContext&)>;

/// Per-round observer; returning false aborts the run (used by replay).
using RoundObserver = std::function<bool(long round, const AdversaryDecision&,
                                         const Configuration&,
                                         const std::vector<ProgramState>&,
                                         const std::vector<Event>&)>;

inline RunResult execute(const ExperimentConfig& c, const DecisionSource& decide,
                         std::ostream* traceOut = nullptr,
                         const RoundObserver& observer = {}) {
  using namespace harnessdetail;
  Configuration cfg = new_configuration(c.topology, c.starts, c.orientations);
  std::vector<ProgramState> programs;
  for (size_t i = 0; i < c.starts.size(); ++i)
    programs.push_back(make_program(make_algorithm(c.algorithmName, c.algorithmParam)));

  const size_t m = cfg.agents.size();
  RunResult res;
  res.terminations.assign(m, std::nullopt);
  res.perAgentMoves.assign(m, 0);
  ActivationHistory hist;
  hist.roundsSinceActive.assign(m, 0);
  std::vector<long> etDebt(m, 0);
  Fnv64 digest;

  if (traceOut) {
    ordered_json header;
    header["type"] = "header";
    header["config"] = config_to_json(c);
    *traceOut << header.dump() << "\n";
  }

  for (long round = 0; round < c.horizon; ++round) {
    bool anyRunning = false;
    for (const auto& a : cfg.agents) anyRunning |= !a.terminated;
    if (!anyRunning) break;

    AdversaryDecision d = decide({cfg, programs, c.model, hist});
    if (auto v = validate_decision(d, cfg, c.model, hist)) {
      res.violations.push_back(*v);
      break;
    }

    // Eventual-transport bookkeeping: an agent left asleep on the port of a
    // present edge accrues debt; activation, removal or leaving the port
    // clears it. Valid fair schedules can never push it past the threshold.
    std::vector<Slot> preSlots(m);
    for (size_t i = 0; i < m; ++i) preSlots[i] = cfg.agents[i].slot;

    std::vector<Event> events;
    step_round(cfg, programs, d, c.model, events);

    for (size_t i = 0; i < m; ++i) {
      const bool active =
          std::find(d.activeSet.begin(), d.activeSet.end(), static_cast<int>(i)) !=
          d.activeSet.end();
      if (cfg.agents[i].terminated) {
        hist.roundsSinceActive[i] = 0;
        etDebt[i] = 0;
        continue;
      }
      hist.roundsSinceActive[i] = active ? 0 : hist.roundsSinceActive[i] + 1;
      const bool onPresentPort =
          preSlots[i] != Slot::Interior &&
          !(d.missingEdge &&
            *d.missingEdge == edge_of_port(cfg.agents[i].node, preSlots[i],
                                           cfg.topology.n));
      if (c.model.synchrony == Synchrony::SSYNC && c.model.transport == Transport::ET &&
          !active && onPresentPort)
        etDebt[i] += 1;
      else
        etDebt[i] = 0;
      if (etDebt[i] >= 2L * c.model.fairnessWindow + 4)
        res.violations.push_back(
            {"TransportGuarantee", "agent starved on a present edge", round});
    }

    for (const auto& e : events) {
      switch (e.type) {
        case EventType::Move:
        case EventType::PassiveTransport:
          res.perAgentMoves[static_cast<size_t>(e.agent)] += 1;
          res.totalMoves += 1;
          break;
        case EventType::Terminated:
          res.terminations[static_cast<size_t>(e.agent)] = round + 1;
          if (!is_explored(cfg))
            res.violations.push_back(
                {"UnsoundTermination", "terminated before full exploration", round});
          break;
        case EventType::Meeting: res.meetingEvents += 1; break;
        case EventType::Catches: res.catchesEvents += 1; break;
        case EventType::Catched: res.catchedEvents += 1; break;
        default: break;
      }
    }
    if (!res.exploredRound && is_explored(cfg)) res.exploredRound = round + 1;
    if (auto v = check_round_invariants(cfg)) res.violations.push_back(*v);

    digest_round(digest, cfg, d);
    if (traceOut)
      *traceOut << round_record(round, d, cfg, programs, events).dump() << "\n";
    if (observer && !observer(round, d, cfg, programs, events)) {
      res.roundsExecuted = round + 1;
      res.traceDigest = digest.h;
      return res;
    }
    res.roundsExecuted = round + 1;
  }

  // Counter accounting: the engine's move events must agree with what each
  // program believes, up to one still-unconfirmed move.
  for (size_t i = 0; i < m; ++i) {
    const long counted = programs[i].counters.Tsteps;
    const long traced = res.perAgentMoves[i];
    if (counted != traced && counted + 1 != traced)
      res.violations.push_back(
          {"CounterAccounting",
           "agent " + std::to_string(i) + " Tsteps=" + std::to_string(counted) +
               " but trace shows " + std::to_string(traced) + " moves",
           cfg.round});
  }
  res.traceDigest = digest.h;
  return res;
}

inline RunResult run_experiment(const ExperimentConfig& c,
                                std::ostream* traceOut = nullptr) {
  Strategy strat = make_adversary(c.adversaryName, c.adversaryParams);
  auto rng = std::make_shared<std::mt19937_64>(c.seed);
  return execute(
      c, [strat, rng](const AdversaryContext& ctx) { return strat(ctx, *rng); },
      traceOut);
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

struct ReplayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Re-executes the decisions recorded in a trace and checks every round's
/// agent states against the file. Throws ReplayError on the first mismatch.
inline RunResult replay_trace(std::istream& in) {
  using namespace harnessdetail;
  std::string line;
  long lineNo = 0;

  auto next_json = [&](const char* what) {
    if (!std::getline(in, line))
      throw ReplayError("line " + std::to_string(lineNo + 1) + ": missing " +
                        std::string(what));
    ++lineNo;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ReplayError("line " + std::to_string(lineNo) + ": malformed record");
    return j;
  };

  ordered_json header = next_json("header");
  if (header.value("type", std::string()) != "header" || !header.contains("config"))
    throw ReplayError("line 1: not a trace header");
  ExperimentConfig c = parse_config(header.at("config"));

  std::vector<ordered_json> records;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ReplayError("line " + std::to_string(lineNo) + ": malformed record");
    records.push_back(std::move(j));
  }

  size_t cursor = 0;
  auto decide = [&](const AdversaryContext&) -> AdversaryDecision {
    if (cursor >= records.size())
      throw ReplayError("trace ends at round " + std::to_string(cursor) +
                        " but the run continues");
    const ordered_json& r = records[cursor];
    AdversaryDecision d;
    const auto& missing = r.at("missing");
    if (missing.is_number_integer()) d.missingEdge = missing.get<int>();
    else if (!missing.is_null())
      throw ReplayError("round " + std::to_string(cursor) +
                        ": missing-edge field must be one edge or null");
    d.activeSet = r.at("active").get<std::vector<int>>();
    return d;
  };

  auto observer = [&](long round, const AdversaryDecision&, const Configuration& cfg,
                      const std::vector<ProgramState>& programs,
                      const std::vector<Event>&) {
    const ordered_json& r = records[cursor];
    if (r.at("round").get<long>() != round)
      throw ReplayError("round " + std::to_string(round) + ": record out of order");
    const auto& recorded = r.at("agents");
    for (size_t i = 0; i < cfg.agents.size(); ++i) {
      ordered_json now = agent_record(cfg.agents[i], programs[i]);
      if (recorded.at(i) != now)
        throw ReplayError("round " + std::to_string(round) + ", agent " +
                          std::to_string(i) + ": replay diverges\n  trace: " +
                          recorded.at(i).dump() + "\n  replay: " + now.dump());
    }
    ++cursor;
    return true;
  };

  return execute(c, decide, nullptr, observer);
}

// ---------------------------------------------------------------------------
// Exhaustive verification (FSYNC edge schedules)
// ---------------------------------------------------------------------------

struct ExhaustiveReport {
  long statesVisited = 0;
  std::optional<long> worstExploredRound;    // 1-based, max over branches
  std::optional<long> worstTerminationRound; // 1-based, max over branches
  bool allExploredByHorizon = true;          // every surviving branch explored
  bool allTerminatedByHorizon = true;
  long soundnessViolations = 0;
  long invariantViolations = 0;
  std::vector<std::optional<EdgeId>> witnessSchedule;  // worst or violating path
};

/// Breadth-first sweep of every per-round edge-removal choice under FSYNC,
/// merging identical full states between branches; the witness path for the
/// extremal (or first violating) branch is reconstructed via parent links.
inline ExhaustiveReport exhaustive_verify(const ExperimentConfig& c, long horizon,
                                          double budget = 1e18) {
  if (c.model.synchrony != Synchrony::FSYNC)
    throw ConfigError("exhaustive verification covers fully synchronous runs only");
  if (std::pow(c.topology.n + 1, static_cast<double>(horizon)) > budget)
    throw ConfigError("exhaustive verification budget exceeded: (n+1)^H > budget");

  struct Node {
    Configuration cfg;
    std::vector<ProgramState> progs;
    int parent = -1;
    int choice = -2;  // -1 = no edge removed, else edge id
  };

  auto state_key = [](const Node& nd) {
    std::string key;
    auto put = [&key](long long v) {
      for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>(v >> (8 * i)));
    };
    for (const auto& a : nd.cfg.agents) {
      put(a.node);
      put(static_cast<int>(a.slot));
      put(a.moved);
      put(a.terminated);
    }
    for (int v : nd.cfg.visited) put(v);
    put(-7);
    for (const auto& p : nd.progs) {
      const auto& r = p.regs;
      const auto& ct = p.counters;
      for (long long v : std::initializer_list<long long>
           {static_cast<long long>(p.state), r.N, static_cast<long long>(r.dir),
            r.tSL, r.leftSteps, r.rightSteps, r.bounceSteps, r.returnSteps, r.d,
            r.r1, r.r2, r.r3, static_cast<long long>(r.id.value),
            static_cast<long long>(r.id.width), static_cast<long long>(r.idSet),
            r.knownN, r.dispFromLandmark, static_cast<long long>(r.landmarkSeen),
            static_cast<long long>(r.forwardRole), static_cast<long long>(r.latch),
            ct.Ttime, ct.Tsteps, ct.Etime, ct.Esteps, ct.Btime, ct.Ntime,
            static_cast<long long>(p.lastDir ? static_cast<int>(*p.lastDir) : -1),
            static_cast<long long>(p.lastDenied),
            static_cast<long long>(p.moveAccounted)})
        put(v);
    }
    return key;
  };

  ExhaustiveReport rep;
  std::vector<std::vector<Node>> depths(1);
  {
    Node root;
    root.cfg = new_configuration(c.topology, c.starts, c.orientations);
    for (size_t i = 0; i < c.starts.size(); ++i)
      root.progs.push_back(
          make_program(make_algorithm(c.algorithmName, c.algorithmParam)));
    depths[0].push_back(std::move(root));
  }

  auto reconstruct = [&](int depth, int idx) {
    std::vector<std::optional<EdgeId>> sched;
    for (int d = depth; d > 0; --d) {
      const Node& nd = depths[static_cast<size_t>(d)][static_cast<size_t>(idx)];
      sched.push_back(nd.choice < 0 ? std::nullopt : std::optional<EdgeId>(nd.choice));
      idx = nd.parent;
    }
    std::reverse(sched.begin(), sched.end());
    return sched;
  };

  bool witnessLocked = false;

  for (long depth = 0; depth < horizon; ++depth) {
    const auto& frontier = depths[static_cast<size_t>(depth)];
    std::vector<Node> next;
    std::unordered_map<std::string, int> seen;

    for (int pi = 0; pi < static_cast<int>(frontier.size()); ++pi) {
      const Node& parent = frontier[static_cast<size_t>(pi)];
      bool anyRunning = false;
      for (const auto& a : parent.cfg.agents) anyRunning |= !a.terminated;
      if (!anyRunning) continue;

      std::vector<int> running;
      for (const auto& a : parent.cfg.agents)
        if (!a.terminated) running.push_back(a.index);

      for (int choice = -1; choice < parent.cfg.topology.n; ++choice) {
        Node child;
        child.cfg = parent.cfg;
        child.progs = parent.progs;
        child.parent = pi;
        child.choice = choice;
        AdversaryDecision d;
        if (choice >= 0) d.missingEdge = choice;
        d.activeSet = running;
        std::vector<Event> events;
        step_round(child.cfg, child.progs, d, c.model, events);

        bool explored = is_explored(child.cfg);
        if (!is_explored(parent.cfg) && explored) {
          if (!rep.worstExploredRound || depth + 1 > *rep.worstExploredRound)
            rep.worstExploredRound = depth + 1;
        }
        auto child_path = [&] {
          auto sched = reconstruct(static_cast<int>(depth), pi);
          sched.push_back(choice < 0 ? std::nullopt
                                     : std::optional<EdgeId>(choice));
          return sched;
        };
        for (const auto& e : events) {
          if (e.type != EventType::Terminated) continue;
          const bool newWorst = !rep.worstTerminationRound ||
                                depth + 1 > *rep.worstTerminationRound;
          if (newWorst) rep.worstTerminationRound = depth + 1;
          if (!explored) {
            rep.soundnessViolations += 1;
            if (!witnessLocked) {
              witnessLocked = true;
              rep.witnessSchedule = child_path();
            }
          } else if (newWorst && !witnessLocked) {
            rep.witnessSchedule = child_path();
          }
        }
        if (check_round_invariants(child.cfg)) rep.invariantViolations += 1;

        std::string key = state_key(child);
        if (seen.emplace(key, static_cast<int>(next.size())).second)
          next.push_back(std::move(child));
      }
    }
    rep.statesVisited += static_cast<long>(next.size());
    depths.push_back(std::move(next));
    if (depths.back().empty()) break;  // every branch fully terminated
  }

  // Survivors at the final depth decide the by-horizon verdicts; the witness
  // path follows the most delinquent branch found.
  const auto& last = depths.back();
  int worstIdx = -1;
  for (int i = 0; i < static_cast<int>(last.size()); ++i) {
    const Node& nd = last[static_cast<size_t>(i)];
    bool explored = is_explored(nd.cfg);
    bool terminated = true;
    for (const auto& a : nd.cfg.agents) terminated &= a.terminated;
    if (!explored) rep.allExploredByHorizon = false;
    if (!terminated) rep.allTerminatedByHorizon = false;
    if (!explored || !terminated) worstIdx = i;
  }
  if (worstIdx >= 0 && !witnessLocked)
    rep.witnessSchedule =
        reconstruct(static_cast<int>(depths.size()) - 1, worstIdx);
  return rep;
}

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

struct CampaignRow {
  long runId = 0;
  std::uint64_t seed = 0;
  int n = 0;
  long N = 0;
  std::string algorithm, adversary;
  std::optional<long> exploredRound, firstTermination;
  long totalMoves = 0;
  std::string violation;  // first violation kind, empty if clean
};

struct CampaignSummary {
  long trials = 0;
  std::optional<long> maxExploredRound, maxLastTermination;
  double meanExploredRound = 0.0;
  long maxTotalMoves = 0;
  long runsWithViolations = 0;
  long runsUnexplored = 0;
  long runsWithoutFullTermination = 0;
  long terminationEvents = 0;
};

inline CampaignRow row_from_result(const ExperimentConfig& c, long runId,
                                   const RunResult& r) {
  CampaignRow row;
  row.runId = runId;
  row.seed = c.seed;
  row.n = c.topology.n;
  row.N = c.algorithmParam;
  row.algorithm = c.algorithmName;
  row.adversary = c.adversaryName;
  row.exploredRound = r.exploredRound;
  row.firstTermination = r.firstTermination();
  row.totalMoves = r.totalMoves;
  if (!r.violations.empty()) row.violation = r.violations.front().kind;
  return row;
}

inline std::pair<std::vector<CampaignRow>, CampaignSummary> campaign(
    const ExperimentConfig& tmpl, long trials, std::uint64_t baseSeed,
    const std::function<void(const ExperimentConfig&, const RunResult&)>& hook = {}) {
  std::vector<CampaignRow> rows;
  CampaignSummary sum;
  double exploredAcc = 0.0;
  long exploredCount = 0;
  for (long t = 0; t < trials; ++t) {
    ExperimentConfig c = tmpl;
    c.seed = baseSeed + static_cast<std::uint64_t>(t);
    RunResult r = run_experiment(c);
    if (hook) hook(c, r);
    rows.push_back(row_from_result(c, t, r));
    sum.trials += 1;
    if (r.exploredRound) {
      exploredAcc += static_cast<double>(*r.exploredRound);
      exploredCount += 1;
      if (!sum.maxExploredRound || *r.exploredRound > *sum.maxExploredRound)
        sum.maxExploredRound = r.exploredRound;
    } else {
      sum.runsUnexplored += 1;
    }
    if (auto lt = r.lastTermination()) {
      if (!sum.maxLastTermination || *lt > *sum.maxLastTermination)
        sum.maxLastTermination = lt;
    } else {
      sum.runsWithoutFullTermination += 1;
    }
    for (const auto& term : r.terminations) sum.terminationEvents += term ? 1 : 0;
    sum.maxTotalMoves = std::max(sum.maxTotalMoves, r.totalMoves);
    if (!r.violations.empty()) sum.runsWithViolations += 1;
  }
  if (exploredCount) sum.meanExploredRound = exploredAcc / exploredCount;
  return {std::move(rows), sum};
}

inline void write_campaign_csv(std::ostream& out, const std::vector<CampaignRow>& rows) {
  out << "run_id,seed,n,N,algorithm,adversary,explored_round,"
         "first_termination_round,total_moves,violation\n";
  for (const auto& r : rows) {
    out << r.runId << ',' << r.seed << ',' << r.n << ',' << r.N << ','
        << r.algorithm << ',' << r.adversary << ',';
    if (r.exploredRound) out << *r.exploredRound;
    out << ',';
    if (r.firstTermination) out << *r.firstTermination;
    out << ',' << r.totalMoves << ',' << r.violation << '\n';
  }
}

inline std::vector<CampaignRow> parse_campaign_csv(std::istream& in) {
  std::vector<CampaignRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f;
    CampaignRow r;
    std::getline(ss, f, ','); r.runId = std::stol(f);
    std::getline(ss, f, ','); r.seed = std::stoull(f);
    std::getline(ss, f, ','); r.n = std::stoi(f);
    std::getline(ss, f, ','); r.N = std::stol(f);
    std::getline(ss, r.algorithm, ',');
    std::getline(ss, r.adversary, ',');
    std::getline(ss, f, ','); if (!f.empty()) r.exploredRound = std::stol(f);
    std::getline(ss, f, ','); if (!f.empty()) r.firstTermination = std::stol(f);
    std::getline(ss, f, ','); r.totalMoves = std::stol(f);
    std::getline(ss, r.violation);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace dring

#endif

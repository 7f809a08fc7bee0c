#ifndef DRING_MODEL_HPP
#define DRING_MODEL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dring/protocol.hpp"
#include "dring/types.hpp"

namespace dring {

inline Configuration new_configuration(const RingTopology& topology,
                                       const std::vector<int>& starts,
                                       const std::vector<int>& orientations) {
  if (starts.empty()) throw std::invalid_argument("no agents");
  if (starts.size() != orientations.size())
    throw std::invalid_argument("starts/orientations length mismatch");
  Configuration cfg;
  cfg.topology = topology;
  for (size_t i = 0; i < starts.size(); ++i) {
    if (starts[i] < 0 || starts[i] >= topology.n)
      throw std::out_of_range("start node out of range");
    if (orientations[i] != 1 && orientations[i] != -1)
      throw std::invalid_argument("orientation must be +1 or -1");
    AgentPhysical a;
    a.index = static_cast<int>(i);
    a.node = starts[i];
    a.orientation = orientations[i];
    cfg.agents.push_back(a);
    cfg.visited.insert(starts[i]);
  }
  return cfg;
}

inline bool is_explored(const Configuration& cfg) {
  return static_cast<int>(cfg.visited.size()) == cfg.topology.n;
}

/// The snapshot agent `idx` would take of the configuration as it stands.
inline Snapshot take_snapshot(const Configuration& cfg, int idx) {
  const AgentPhysical& me = cfg.agents[static_cast<size_t>(idx)];
  Snapshot s;
  s.myPos = slot_in_frame(me.slot, me.orientation);
  s.isLandmark = cfg.topology.landmark && *cfg.topology.landmark == me.node;
  s.myMoved = me.moved;
  for (const auto& o : cfg.agents) {
    if (o.index == idx || o.node != me.node) continue;
    s.others.push_back({slot_in_frame(o.slot, me.orientation), o.moved});
  }
  return s;
}

/// Activation bookkeeping the validator needs across rounds.
struct ActivationHistory {
  std::vector<int> roundsSinceActive;  // per agent, running agents only
};

inline std::optional<Violation> validate_decision(const AdversaryDecision& d,
                                                  const Configuration& cfg,
                                                  const ExecutionModel& model,
                                                  const ActivationHistory& hist) {
  if (d.missingEdge && (*d.missingEdge < 0 || *d.missingEdge >= cfg.topology.n))
    return Violation{"BadEdge", "missing edge id out of range", cfg.round};

  std::vector<int> running;
  for (const auto& a : cfg.agents)
    if (!a.terminated) running.push_back(a.index);
  if (running.empty()) return std::nullopt;  // nothing left to schedule

  if (d.activeSet.empty())
    return Violation{"EmptyActiveSet", "active set must be non-empty", cfg.round};
  for (int i : d.activeSet) {
    if (i < 0 || i >= static_cast<int>(cfg.agents.size()))
      return Violation{"BadAgent", "active set names unknown agent", cfg.round};
    if (cfg.agents[static_cast<size_t>(i)].terminated)
      return Violation{"BadAgent", "active set names terminated agent", cfg.round};
  }
  if (model.synchrony == Synchrony::FSYNC && d.activeSet != running)
    return Violation{"NotFullySynchronous",
                     "FSYNC requires every running agent active", cfg.round};
  if (model.synchrony == Synchrony::SSYNC) {
    for (int i : running) {
      bool active = std::find(d.activeSet.begin(), d.activeSet.end(), i) !=
                    d.activeSet.end();
      if (!active && !hist.roundsSinceActive.empty() &&
          hist.roundsSinceActive[static_cast<size_t>(i)] + 1 >= model.fairnessWindow)
        return Violation{"FairnessWindow",
                         "agent idle beyond the fairness window", cfg.round};
    }
  }
  if (!d.tieBreak.empty()) {
    std::vector<int> sorted = d.tieBreak;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != static_cast<int>(i))
        return Violation{"BadTieBreak", "tie-break is not a permutation", cfg.round};
  }
  return std::nullopt;
}

/// Executes one synchronous round in place. The decision must already have
/// passed validate_decision.
inline void step_round(Configuration& cfg, std::vector<ProgramState>& programs,
                       const AdversaryDecision& decision,
                       const ExecutionModel& model, std::vector<Event>& events) {
  const int n = cfg.topology.n;
  const long round = cfg.round;
  const size_t m = cfg.agents.size();
  cfg.missingEdge = decision.missingEdge;

  std::vector<bool> active(m, false);
  for (int i : decision.activeSet)
    if (!cfg.agents[static_cast<size_t>(i)].terminated)
      active[static_cast<size_t>(i)] = true;

  // Look + Compute against the settled previous round.
  std::vector<std::optional<Action>> actions(m);
  for (size_t i = 0; i < m; ++i) {
    if (!active[i]) continue;
    Snapshot snap = take_snapshot(cfg, static_cast<int>(i));
    StepResult r = protocol_step(programs[i], snap);
    actions[i] = r.action;
    if (r.flags.meeting) events.push_back({EventType::Meeting, (int)i, round});
    if (r.flags.catches) events.push_back({EventType::Catches, (int)i, round});
    if (r.flags.catched) events.push_back({EventType::Catched, (int)i, round});
  }

  // Port acquisition in mutual exclusion. Holders that keep their port and
  // sleeping agents on ports retain them; everyone else requests in tie-break
  // order.
  std::map<std::pair<int, Slot>, int> taken;
  for (size_t i = 0; i < m; ++i) {
    AgentPhysical& a = cfg.agents[i];
    if (a.slot == Slot::Interior) continue;
    if (!active[i]) {  // sleeping (or terminated) agents do not act
      taken[{a.node, a.slot}] = a.index;
      continue;
    }
    const Action& act = *actions[i];
    if (act.kind == ActionKind::Move) {
      int delta = global_delta(act.dir, a.orientation);
      Slot want = port_for_delta(delta);
      if (want == a.slot) {
        taken[{a.node, a.slot}] = a.index;  // keeps the port it occupies
        continue;
      }
    }
    a.slot = Slot::Interior;  // leaves the port during Compute
  }

  std::vector<int> order = decision.tieBreak;
  if (order.empty())
    for (size_t i = 0; i < m; ++i) order.push_back(static_cast<int>(i));

  for (int idx : order) {
    size_t i = static_cast<size_t>(idx);
    if (!active[i]) continue;
    AgentPhysical& a = cfg.agents[i];
    const Action& act = *actions[i];
    if (act.kind == ActionKind::Terminate) {
      a.terminated = true;
      a.slot = Slot::Interior;
      a.moved = false;
      events.push_back({EventType::Terminated, a.index, round});
      continue;
    }
    if (act.kind == ActionKind::Stay) {
      a.moved = false;
      continue;
    }
    int delta = global_delta(act.dir, a.orientation);
    Slot want = port_for_delta(delta);
    if (a.slot == want) continue;  // already granted above
    auto key = std::make_pair(a.node, want);
    if (taken.count(key)) {
      a.moved = false;
      programs[i].lastDenied = true;
      events.push_back({EventType::PortDenied, a.index, round});
    } else {
      taken[key] = a.index;
      a.slot = want;
    }
  }

  // Simultaneous movement. Opposite crossings of one edge swap silently.
  for (size_t i = 0; i < m; ++i) {
    if (!active[i]) continue;
    AgentPhysical& a = cfg.agents[i];
    if (a.terminated || a.slot == Slot::Interior) continue;
    EdgeId e = edge_of_port(a.node, a.slot, n);
    if (decision.missingEdge && *decision.missingEdge == e) {
      a.moved = false;
      events.push_back({EventType::Blocked, a.index, round, e});
    } else {
      a.node = neighbour(a.node, a.slot == Slot::PortMinus ? -1 : +1, n);
      a.slot = Slot::Interior;
      a.moved = true;
      events.push_back({EventType::Move, a.index, round, e});
    }
  }

  // Passive transport: sleeping agents on ports of present edges are carried
  // across, with their counters credited immediately.
  if (model.synchrony == Synchrony::SSYNC && model.transport == Transport::PT) {
    for (size_t i = 0; i < m; ++i) {
      AgentPhysical& a = cfg.agents[i];
      if (active[i] || a.terminated || a.slot == Slot::Interior) continue;
      EdgeId e = edge_of_port(a.node, a.slot, n);
      if (decision.missingEdge && *decision.missingEdge == e) continue;
      int delta = a.slot == Slot::PortMinus ? -1 : +1;
      a.node = neighbour(a.node, delta, n);
      a.slot = Slot::Interior;
      a.moved = true;
      bool atLandmark = cfg.topology.landmark && *cfg.topology.landmark == a.node;
      Dir privDir = delta * a.orientation < 0 ? Dir::Left : Dir::Right;
      apply_passive_transport(programs[i], privDir, atLandmark);
      events.push_back({EventType::PassiveTransport, a.index, round, e});
    }
  }

  for (const auto& a : cfg.agents) cfg.visited.insert(a.node);
  cfg.round = round + 1;
}

/// Structural checks on a configuration at a round boundary.
inline std::optional<Violation> check_round_invariants(const Configuration& cfg) {
  std::map<std::pair<int, Slot>, int> ports;
  for (const auto& a : cfg.agents) {
    if (a.slot == Slot::Interior) continue;
    auto key = std::make_pair(a.node, a.slot);
    if (ports.count(key))
      return Violation{"PortExclusion", "two agents share a port", cfg.round};
    ports[key] = a.index;
  }
  for (const auto& a : cfg.agents)
    if (!cfg.visited.count(a.node))
      return Violation{"VisitedCoverage", "agent stands on an unvisited node",
                       cfg.round};
  return std::nullopt;
}

}  // namespace dring

#endif

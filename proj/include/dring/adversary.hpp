#ifndef DRING_ADVERSARY_HPP
#define DRING_ADVERSARY_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dring/model.hpp"
#include "dring/protocol.hpp"
#include "dring/types.hpp"

namespace dring {

struct AdversaryContext {
  const Configuration& cfg;
  const std::vector<ProgramState>& programs;
  const ExecutionModel& model;
  const ActivationHistory& hist;
};

using Strategy =
    std::function<AdversaryDecision(const AdversaryContext&, std::mt19937_64&)>;

struct AdversaryParams {
  EdgeId edge = 0;        // fixed
  double pMissing = 0.8;  // random: probability that some edge is removed
  int nSmall = 0;    // et-confuser: size of the small ring / confined segment
  bool large = false;  // et-confuser: which of the two rings this run plays
};

namespace advdetail {

/// The move agent i would attempt if activated right now; the simulation runs
/// on a scratch copy so the real program state is untouched.
struct Intent {
  bool moving = false;
  EdgeId edge = 0;
  int target = 0;
};

inline Intent intent_of(const Configuration& cfg,
                        const std::vector<ProgramState>& programs, int i) {
  const AgentPhysical& a = cfg.agents[static_cast<size_t>(i)];
  Intent out;
  if (a.terminated) return out;
  ProgramState scratch = programs[static_cast<size_t>(i)];
  Action act = protocol_step(scratch, take_snapshot(cfg, i)).action;
  if (act.kind != ActionKind::Move) return out;
  const int delta = global_delta(act.dir, a.orientation);
  out.moving = true;
  out.edge = edge_from(a.node, delta, cfg.topology.n);
  out.target = neighbour(a.node, delta, cfg.topology.n);
  return out;
}

inline std::vector<int> running_agents(const Configuration& cfg) {
  std::vector<int> out;
  for (const auto& a : cfg.agents)
    if (!a.terminated) out.push_back(a.index);
  return out;
}

inline AdversaryDecision all_active(const Configuration& cfg,
                                    std::optional<EdgeId> missing) {
  return {missing, running_agents(cfg), {}};
}

}  // namespace advdetail

inline Strategy make_adversary(const std::string& name,
                               const AdversaryParams& params = {}) {
  using namespace advdetail;

  if (name == "none")
    return [](const AdversaryContext& c, std::mt19937_64&) {
      return all_active(c.cfg, std::nullopt);
    };

  if (name == "fixed") {
    EdgeId e = params.edge;
    return [e](const AdversaryContext& c, std::mt19937_64&) {
      return all_active(c.cfg, e);
    };
  }

  if (name == "random") {
    double p = params.pMissing;
    return [p](const AdversaryContext& c, std::mt19937_64& rng) {
      const int n = c.cfg.topology.n;
      std::optional<EdgeId> missing;
      if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p)
        missing = std::uniform_int_distribution<int>(0, n - 1)(rng);
      auto running = running_agents(c.cfg);
      if (c.model.synchrony == Synchrony::FSYNC)
        return AdversaryDecision{missing, running, {}};
      std::vector<int> active;
      for (int i : running) {
        bool mustRun =
            !c.hist.roundsSinceActive.empty() &&
            c.hist.roundsSinceActive[static_cast<size_t>(i)] + 1 >=
                c.model.fairnessWindow;
        if (mustRun || std::uniform_int_distribution<int>(0, 1)(rng))
          active.push_back(i);
      }
      if (active.empty()) active.push_back(running.front());
      return AdversaryDecision{missing, active, {}};
    };
  }

  // Stress heuristic: removes the edge directly ahead of the agent with the
  // largest Esteps (ties to the lowest index).
  if (name == "greedy-block-frontier")
    return [](const AdversaryContext& c, std::mt19937_64&) {
      std::optional<EdgeId> missing;
      long bestEsteps = -1;
      for (int i : running_agents(c.cfg)) {
        Intent it = intent_of(c.cfg, c.programs, i);
        if (!it.moving) continue;
        long e = c.programs[static_cast<size_t>(i)].counters.Esteps;
        if (e > bestEsteps) {
          bestEsteps = e;
          missing = it.edge;
        }
      }
      return all_active(c.cfg, missing);
    };

  // A lone agent never gets to cross the edge it is heading for.
  if (name == "block-single-agent")
    return [](const AdversaryContext& c, std::mt19937_64&) {
      if (c.cfg.agents.size() != 1)
        throw std::invalid_argument("block-single-agent drives exactly one agent");
      Intent it = intent_of(c.cfg, c.programs, 0);
      std::optional<EdgeId> missing;
      if (it.moving) missing = it.edge;
      return all_active(c.cfg, missing);
    };

  // Keeps two agents from ever satisfying a meeting/catch predicate: breaks
  // up same-target rounds and stalls a leader only while the follower is
  // still at a safe distance.
  if (name == "prevent-meeting")
    return [](const AdversaryContext& c, std::mt19937_64&) {
      const int n = c.cfg.topology.n;
      auto running = running_agents(c.cfg);
      std::vector<Intent> intents(c.cfg.agents.size());
      for (int i : running) intents[static_cast<size_t>(i)] = intent_of(c.cfg, c.programs, i);

      for (size_t i = 0; i < running.size(); ++i)
        for (size_t j = i + 1; j < running.size(); ++j) {
          const AgentPhysical& pa = c.cfg.agents[static_cast<size_t>(running[i])];
          const AgentPhysical& pb = c.cfg.agents[static_cast<size_t>(running[j])];
          const Intent &a = intents[static_cast<size_t>(running[i])],
                       &b = intents[static_cast<size_t>(running[j])];
          if (a.moving && b.moving && a.target == b.target && a.edge != b.edge)
            return all_active(c.cfg, a.edge);  // simultaneous arrival
          if (a.moving && b.moving && a.target == pb.node && b.target == pa.node &&
              a.edge == b.edge)
            return all_active(c.cfg, a.edge);  // head-on over one edge
          if (a.moving && !b.moving && a.target == pb.node)
            return all_active(c.cfg, a.edge);  // walking into a resting agent
          if (b.moving && !a.moving && b.target == pa.node)
            return all_active(c.cfg, b.edge);
        }

      if (running.size() == 2) {
        const AgentPhysical& a0 = c.cfg.agents[static_cast<size_t>(running[0])];
        const AgentPhysical& a1 = c.cfg.agents[static_cast<size_t>(running[1])];
        const Intent& i0 = intents[static_cast<size_t>(running[0])];
        const Intent& i1 = intents[static_cast<size_t>(running[1])];
        if (i0.moving && i1.moving) {
          int d0 = (i0.target - a0.node + n) % n;
          int d1 = (i1.target - a1.node + n) % n;
          if (d0 == d1 && a0.node != a1.node) {
            // Follower chases leader; stall the leader while the gap is safe.
            int gap01 = ((a1.node - a0.node) * (d0 == 1 ? 1 : -1) % n + n) % n;
            const Intent& leader = gap01 <= n - gap01 ? i1 : i0;
            int gap = std::min(gap01, n - gap01);
            if (gap > 2) return all_active(c.cfg, leader.edge);
          }
        }
      }
      return all_active(c.cfg, std::nullopt);
    };

  // Semi-synchronous scheduler with no transport guarantee. Each round it
  // groups the agents by the edge they want to cross, removes one of those
  // wanted edges (alternating when two are wanted), and activates exactly the
  // agents that wanted the removed edge plus those not trying to move at all.
  // Movers toward a present edge are left asleep, so nobody ever advances.
  if (name == "ns-alternator") {
    auto parity = std::make_shared<int>(0);
    return [parity](const AdversaryContext& c, std::mt19937_64&) {
      auto running = running_agents(c.cfg);
      std::vector<int> idle;
      std::vector<std::pair<EdgeId, std::vector<int>>> wanted;
      for (int i : running) {
        Intent it = intent_of(c.cfg, c.programs, i);
        if (!it.moving) {
          idle.push_back(i);
          continue;
        }
        auto grp = std::find_if(wanted.begin(), wanted.end(),
                                [&](const auto& w) { return w.first == it.edge; });
        if (grp == wanted.end())
          wanted.push_back({it.edge, {i}});
        else
          grp->second.push_back(i);
      }
      if (wanted.empty()) return all_active(c.cfg, std::nullopt);

      const auto& pick = wanted[static_cast<size_t>(*parity) % wanted.size()];
      *parity += 1;
      if (wanted.size() == 1) return all_active(c.cfg, pick.first);

      std::vector<int> active = pick.second;
      active.insert(active.end(), idle.begin(), idle.end());
      for (int i : running) {
        bool mustRun =
            !c.hist.roundsSinceActive.empty() &&
            c.hist.roundsSinceActive[static_cast<size_t>(i)] + 1 >=
                c.model.fairnessWindow;
        if (mustRun &&
            std::find(active.begin(), active.end(), i) == active.end())
          active.push_back(i);
      }
      std::sort(active.begin(), active.end());
      return AdversaryDecision{pick.first, active, {}};
    };
  }

  // Confines the agents to a half-ring window; whenever they press both of
  // its boundary edges at once, one presser is left asleep on a present edge
  // so passive transport carries it out and the window slides after it.
  if (name == "pt-lower-bound-shifter") {
    struct WindowState { int lo = 0; };
    auto ws = std::make_shared<WindowState>();
    return [ws](const AdversaryContext& c, std::mt19937_64&) {
      const int n = c.cfg.topology.n;
      const int width = (n + 1) / 2;
      const int hi = (ws->lo + width - 1) % n;
      const EdgeId eLeft = (ws->lo + n - 1) % n;
      const EdgeId eRight = hi;

      auto running = running_agents(c.cfg);
      std::optional<int> pressLeft, pressRight;
      for (int i : running) {
        Intent it = intent_of(c.cfg, c.programs, i);
        if (!it.moving) continue;
        if (it.edge == eLeft && !pressLeft) pressLeft = i;
        if (it.edge == eRight && !pressRight) pressRight = i;
      }

      if (pressLeft && pressRight) {
        // Right presser sleeps; its edge stays present, so it is transported
        // out of the window, which then follows it.
        std::vector<int> active;
        for (int i : running)
          if (i != *pressRight) active.push_back(i);
        if (active.empty()) active.push_back(*pressLeft);
        ws->lo = (ws->lo + 1) % n;
        return AdversaryDecision{eLeft, active, {}};
      }
      std::optional<EdgeId> missing;
      if (pressLeft) missing = eLeft;
      else if (pressRight) missing = eRight;
      return all_active(c.cfg, missing);
    };
  }

  // Two-ring indistinguishability scheduler. The small run keeps one edge
  // missing forever; the large run pens the agents into a segment of the
  // same length bounded by two edges, only one of which can be missing per
  // round. In rounds where both boundary edges are pressed, the runs
  // alternate which side sleeps, so the local views stay identical.
  if (name == "et-confuser") {
    const int nSmall = params.nSmall;
    const bool large = params.large;
    auto parity = std::make_shared<int>(0);
    return [nSmall, large, parity](const AdversaryContext& c, std::mt19937_64&) {
      const int n = c.cfg.topology.n;
      const EdgeId eRight = nSmall - 1;          // between nSmall-1 and nSmall
      const EdgeId eLeft = large ? n - 1 : eRight;  // between n-1 and 0

      auto running = running_agents(c.cfg);
      std::vector<int> pressL, pressR;
      for (int i : running) {
        Intent it = intent_of(c.cfg, c.programs, i);
        if (!it.moving) continue;
        const AgentPhysical& a = c.cfg.agents[static_cast<size_t>(i)];
        if (a.node == 0 && it.edge == eLeft) pressL.push_back(i);
        if (a.node == nSmall - 1 && it.edge == eRight) pressR.push_back(i);
      }

      if (!pressL.empty() && !pressR.empty()) {
        const bool sleepRight = (*parity % 2 == 0);
        *parity += 1;
        const std::vector<int>& sleepers = sleepRight ? pressR : pressL;
        std::vector<int> active;
        for (int i : running)
          if (std::find(sleepers.begin(), sleepers.end(), i) == sleepers.end())
            active.push_back(i);
        if (active.empty()) active.push_back(running.front());
        EdgeId missing = large ? (sleepRight ? eLeft : eRight) : eLeft;
        return AdversaryDecision{missing, active, {}};
      }
      std::optional<EdgeId> missing;
      if (!large) missing = eLeft;  // the one edge, gone for good
      else if (!pressL.empty()) missing = eLeft;
      else if (!pressR.empty()) missing = eRight;
      else missing = eRight;
      return all_active(c.cfg, missing);
    };
  }

  throw std::invalid_argument("unknown adversary: " + name);
}

inline std::vector<std::string> adversary_names() {
  return {"none",         "fixed",        "random",
          "greedy-block-frontier", "block-single-agent", "prevent-meeting",
          "ns-alternator", "pt-lower-bound-shifter", "et-confuser"};
}

}  // namespace dring

#endif

#ifndef DRING_PROTOCOL_HPP
#define DRING_PROTOCOL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dring/schedule.hpp"
#include "dring/types.hpp"

namespace dring {

// ---------------------------------------------------------------------------
// Per-agent protocol state
// ---------------------------------------------------------------------------

struct Counters {
  long Ttime = 0;   // activations since the start of the run
  long Tsteps = 0;  // successful moves since the start of the run
  long Etime = 0;   // activations since the current explore invocation began
  long Esteps = 0;  // successful moves within the current explore invocation
  long Btime = 0;   // consecutive activations spent waiting (port or queue)
  long Ntime = 0;   // activations since the ring size was learned
};

struct Registers {
  long N = 0;
  Dir dir = Dir::Left;
  long tSL = 0;
  long leftSteps = 0;
  long rightSteps = 0;
  long bounceSteps = 0;
  long returnSteps = 0;
  long d = 0;
  long r1 = 0, r2 = 0, r3 = 0;
  AgentId id{};
  bool idSet = false;
  DirectionSchedule sched{};
  long knownN = 0;             // 0 = unknown ring size
  long dispFromLandmark = 0;   // net displacement in the private frame
  bool landmarkSeen = false;
  int forwardRole = 0;         // 0 unset, 1 = F (caught), 2 = B (catcher)
  int latch = 0;               // per-state multi-round bookkeeping
};

enum class ActionKind : int8_t { Move, Stay, Terminate };

struct Action {
  ActionKind kind = ActionKind::Stay;
  Dir dir = Dir::Left;  // meaningful for Move

  static Action move(Dir d) { return {ActionKind::Move, d}; }
  static Action stay() { return {ActionKind::Stay, Dir::Left}; }
  static Action terminate() { return {ActionKind::Terminate, Dir::Left}; }
};

struct EventFlags {
  bool meeting = false;
  bool catches = false;
  bool catched = false;
};

struct AlgorithmSpec;  // fwd

struct ProgramState {
  std::shared_ptr<const AlgorithmSpec> algorithm;
  int state = 0;
  Registers regs;
  Counters counters;
  std::optional<Dir> lastDir;  // direction of the last attempted move
  bool lastDenied = false;     // lost port acquisition on the last attempt
  bool moveAccounted = false;  // pending move already counted (PT transport)
};

// ---------------------------------------------------------------------------
// State machine description
// ---------------------------------------------------------------------------

using StateId = int;
constexpr StateId kTerminate = -1;

struct Guard {
  std::string name;
  std::function<bool(const ProgramState&, const Snapshot&, const EventFlags&)> pred;
  StateId next = kTerminate;
};

/// What a state's entry code decides in the activation that enters it.
struct EntryResult {
  enum Kind { Proceed, Act, Force } kind = Proceed;
  Action action{};       // for Act
  StateId next = 0;      // for Force: chain into another state's entry
  static EntryResult proceed() { return {Proceed, {}, 0}; }
  static EntryResult act(Action a) { return {Act, a, 0}; }
  static EntryResult force(StateId s) { return {Force, {}, s}; }
};

struct StateDef {
  std::string name;
  std::function<Dir(const Registers&)> direction = [](const Registers&) { return Dir::Left; };
  std::vector<Guard> guards;
  // Runs once, in the same activation as the triggering guard, before the
  // state's explore invocation begins (so it still sees the previous
  // invocation's Etime/Esteps).
  std::function<EntryResult(ProgramState&, const Snapshot&, const EventFlags&)> entry;
  // Fully replaces guard evaluation on later activations (latched states).
  std::function<Action(ProgramState&, const Snapshot&, const EventFlags&)> resume;
};

enum class SizeKnowledge : int8_t { None, UpperBound, Exact };

struct AlgorithmSpec {
  std::string name;
  std::optional<Synchrony> requiredSynchrony;
  std::optional<Transport> requiredTransport;
  int requiredAgents = 2;
  bool requiresChirality = false;
  bool requiresLandmark = false;
  SizeKnowledge sizeKnowledge = SizeKnowledge::None;
  bool usesLandmarkTracking = false;
  bool terminating = true;
  StateId initState = 0;
  std::function<void(Registers&)> initRegs;
  std::vector<StateDef> states;

  StateId state_index(const std::string& n) const {
    for (size_t i = 0; i < states.size(); ++i)
      if (states[i].name == n) return static_cast<StateId>(i);
    throw std::logic_error("unknown state: " + n);
  }
};

inline ProgramState make_program(std::shared_ptr<const AlgorithmSpec> spec) {
  ProgramState ps;
  ps.algorithm = std::move(spec);
  ps.state = ps.algorithm->initState;
  if (ps.algorithm->initRegs) ps.algorithm->initRegs(ps.regs);
  return ps;
}

// ---------------------------------------------------------------------------
// Event predicates
// ---------------------------------------------------------------------------

/// meeting: both arrived in the node by successful moves.
/// catches: in the node (after a successful move, or stuck in the port queue)
///          with the other agent on the port in the travel direction.
/// catched: on the port after a failed move with the other agent in the node.
///
/// The queue case extends the strict after-a-successful-move reading: an agent
/// repeatedly denied the port behind a blocked peer still catches it, which is
/// what lets co-located same-direction agents split up.
inline EventFlags evaluate_event_predicates(const Snapshot& snap,
                                            std::optional<Dir> travelDir,
                                            bool lastDenied) {
  EventFlags f;
  bool inNode = !snap.myPos.has_value();
  if (inNode && (snap.myMoved || lastDenied) && travelDir) {
    for (const auto& o : snap.others)
      if (o.pos == travelDir) { f.catches = true; break; }
  }
  if (inNode && snap.myMoved) {
    for (const auto& o : snap.others)
      if (!o.pos && o.moved) { f.meeting = true; break; }
  }
  if (!inNode && !snap.myMoved) {
    for (const auto& o : snap.others)
      if (!o.pos) { f.catched = true; break; }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Counter bookkeeping
// ---------------------------------------------------------------------------

namespace detail {

inline void account_landmark(ProgramState& ps, bool atLandmark) {
  if (!ps.algorithm->usesLandmarkTracking) return;
  auto& r = ps.regs;
  if (atLandmark && !r.landmarkSeen) {
    r.landmarkSeen = true;
    r.dispFromLandmark = 0;
  } else if (atLandmark && r.landmarkSeen && r.dispFromLandmark != 0 &&
             r.knownN == 0) {
    r.knownN = r.dispFromLandmark < 0 ? -r.dispFromLandmark : r.dispFromLandmark;
  }
}

inline void account_successful_move(ProgramState& ps, Dir moveDir, bool atLandmark) {
  ps.counters.Tsteps += 1;
  ps.counters.Esteps += 1;
  ps.counters.Btime = 0;
  if (ps.algorithm->usesLandmarkTracking && ps.regs.landmarkSeen)
    ps.regs.dispFromLandmark += (moveDir == Dir::Left ? -1 : +1);
  account_landmark(ps, atLandmark);
}

}  // namespace detail

/// Applies a passive transport (PT model) to a sleeping agent: counters and
/// landmark tracking update immediately; the physical move is the engine's.
inline void apply_passive_transport(ProgramState& ps, Dir moveDir, bool atLandmark) {
  detail::account_successful_move(ps, moveDir, atLandmark);
  ps.moveAccounted = true;
}

// ---------------------------------------------------------------------------
// One activation
// ---------------------------------------------------------------------------

struct StepResult {
  Action action{};
  EventFlags flags{};
};

/// Runs one Look/Compute for an activated agent. Mutates counters, registers
/// and state; the returned action is carried out by the round engine.
inline StepResult protocol_step(ProgramState& ps, const Snapshot& snap) {
  const AlgorithmSpec& alg = *ps.algorithm;
  Counters& c = ps.counters;

  c.Ttime += 1;
  c.Etime += 1;
  if (ps.regs.knownN != 0) c.Ntime += 1;

  if (snap.myMoved && !ps.moveAccounted) {
    detail::account_successful_move(ps, ps.lastDir.value_or(Dir::Left), snap.isLandmark);
  } else if (!snap.myMoved && ps.lastDir &&
             (snap.myPos.has_value() || ps.lastDenied)) {
    c.Btime += 1;  // waiting on a blocked port, or in its queue
    detail::account_landmark(ps, snap.isLandmark);
  } else {
    detail::account_landmark(ps, snap.isLandmark);
  }
  ps.moveAccounted = false;

  EventFlags flags = evaluate_event_predicates(snap, ps.lastDir, ps.lastDenied);

  std::optional<Action> decided;
  bool entering = false;
  for (int hops = 0;; ++hops) {
    if (hops > 64) throw std::logic_error(alg.name + ": state transition loop");
    if (ps.state == kTerminate) { decided = Action::terminate(); break; }
    if (ps.state < 0 || ps.state >= static_cast<int>(alg.states.size()))
      throw std::logic_error(alg.name + ": bad state id");
    const StateDef& st = alg.states[static_cast<size_t>(ps.state)];

    if (entering) {
      // Role bookkeeping: the catcher becomes B, the caught becomes F;
      // sticky once set.
      if (ps.regs.forwardRole == 0) {
        if (flags.catches && (st.name == "Bounce")) ps.regs.forwardRole = 2;
        if (flags.catched && (st.name == "Forward")) ps.regs.forwardRole = 1;
      }
      EntryResult er = st.entry ? st.entry(ps, snap, flags) : EntryResult::proceed();
      c.Etime = 0;
      c.Esteps = 0;
      if (er.kind == EntryResult::Force) {
        ps.state = er.next;
        continue;  // chain into the next state's entry
      }
      if (er.kind == EntryResult::Act) {
        if (er.action.kind == ActionKind::Terminate) ps.state = kTerminate;
        decided = er.action;
        break;
      }
      decided = Action::move(st.direction(ps.regs));
      break;
    }

    if (st.resume && ps.regs.latch != 0) {
      decided = st.resume(ps, snap, flags);
      if (decided->kind == ActionKind::Terminate) ps.state = kTerminate;
      break;
    }

    bool fired = false;
    for (const Guard& g : st.guards) {
      if (g.pred(ps, snap, flags)) {
        ps.state = g.next;
        fired = true;
        break;
      }
    }
    if (fired) {
      if (ps.state == kTerminate) { decided = Action::terminate(); break; }
      // A different travel direction in the new state ends any wait streak.
      const StateDef& nx = alg.states[static_cast<size_t>(ps.state)];
      entering = true;
      (void)nx;
      continue;
    }
    decided = Action::move(st.direction(ps.regs));
    break;
  }

  Action act = *decided;
  if (act.kind == ActionKind::Move) {
    if (ps.lastDir && *ps.lastDir != act.dir) c.Btime = 0;  // direction change
    ps.lastDir = act.dir;
  } else {
    ps.lastDir = std::nullopt;
    c.Btime = 0;
  }
  ps.lastDenied = false;  // engine refreshes after port acquisition
  return {act, flags};
}

}  // namespace dring

#endif

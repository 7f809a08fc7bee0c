#ifndef DRING_ALGORITHMS_HPP
#define DRING_ALGORITHMS_HPP

#include <algorithm>
#include <memory>
#include <string>

#include "dring/protocol.hpp"
#include "dring/schedule.hpp"

namespace dring {

inline long ceil_log2(long n) {
  long k = 0;
  while ((1L << k) < n) ++k;
  return k;
}

/// Round budget that guarantees a long common-direction stretch for two
/// distinct ids of width up to 3*ceil(log n).
inline long direction_deadline(long n) { return 32 * ((3 * ceil_log2(n) + 3) * 5 * n); }

namespace algdetail {

using P = const ProgramState&;
using S = const Snapshot&;
using F = const EventFlags&;

inline Dir dleft(const Registers&) { return Dir::Left; }
inline Dir dright(const Registers&) { return Dir::Right; }
inline Dir dreg(const Registers& r) { return r.dir; }

inline Guard on_catches(StateId next) {
  return {"catches", [](P, S, F f) { return f.catches; }, next};
}
inline Guard on_catched(StateId next) {
  return {"catched", [](P, S, F f) { return f.catched; }, next};
}
inline Guard on_meeting(StateId next) {
  return {"meeting", [](P, S, F f) { return f.meeting; }, next};
}
inline Guard ttime_ge(long k, StateId next) {
  return {"ttime", [k](P p, S, F) { return p.counters.Ttime >= k; }, next};
}
inline Guard esteps_ge(long k, StateId next) {
  return {"esteps", [k](P p, S, F) { return p.counters.Esteps >= k; }, next};
}
inline Guard btime_ge(long k, StateId next) {
  return {"btime", [k](P p, S, F) { return p.counters.Btime >= k; }, next};
}
inline Guard size_known(StateId next) {
  return {"size-known", [](P p, S, F) { return p.regs.knownN != 0; }, next};
}
inline Guard at_landmark(StateId next) {
  return {"at-landmark", [](P, S s, F) { return s.isLandmark; }, next};
}
/// Ntime > k*n once the size is known; vacuously false before.
inline Guard ntime_gt(long k, StateId next) {
  return {"ntime", [k](P p, S, F) {
            return p.regs.knownN != 0 && p.counters.Ntime > k * p.regs.knownN;
          }, next};
}

inline void declare_states(AlgorithmSpec& a, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    StateDef s;
    s.name = n;
    a.states.push_back(std::move(s));
  }
}

inline StateDef& st(AlgorithmSpec& a, const char* name) {
  return a.states[static_cast<size_t>(a.state_index(name))];
}

inline bool other_in_node(const Snapshot& snap) {
  for (const auto& o : snap.others)
    if (!o.pos) return true;
  return false;
}

/// Bounce / Return / Forward / BComm / FComm of the landmark machinery.
/// The owning spec must have declared all five states.
///
/// A catch fixes a common frame for the pair even when their orientations
/// differ: both agents were travelling the same way when it happened. The
/// core therefore steers by the dir register, seeded from the direction of
/// the move (or attempt) that triggered the catch. With shared chirality
/// this reduces to the constant left/right directions.
inline void fill_landmark_core(AlgorithmSpec& a) {
  const StateId Bounce = a.state_index("Bounce");
  const StateId Forward = a.state_index("Forward");
  const StateId Return = a.state_index("Return");
  const StateId BComm = a.state_index("BComm");
  const StateId FComm = a.state_index("FComm");

  {
    auto& s = st(a, "Bounce");
    s.entry = [](ProgramState& ps, S, F) {
      if (ps.lastDir) ps.regs.dir = opposite(*ps.lastDir);  // turn away
      // The bounce/return timeouts measure time since this catch; an agent
      // that learned the size long before must not time out instantly and
      // strand a partner that is still ignorant of it.
      ps.counters.Ntime = 0;
      return EntryResult::proceed();
    };
    s.direction = dreg;
    s.guards = {on_meeting(kTerminate),
                Guard{"stalled-or-size",
                      [](P p, S, F) {
                        return p.counters.Etime > 2 * p.counters.Esteps ||
                               p.counters.Ntime > 0;
                      },
                      Return}};
  }
  {
    auto& s = st(a, "Return");
    s.entry = [](ProgramState& ps, S, F) {
      ps.regs.bounceSteps = ps.counters.Esteps;
      ps.regs.dir = opposite(ps.regs.dir);  // back toward the caught agent
      return EntryResult::proceed();
    };
    s.direction = dreg;
    s.guards = {Guard{"size-or-caught",
                      [](P p, S, F f) {
                        return (p.regs.knownN != 0 &&
                                p.counters.Ntime > 3 * p.regs.knownN) ||
                               f.catched;
                      },
                      kTerminate},
                on_catches(BComm)};
  }
  {
    auto& s = st(a, "Forward");
    s.entry = [](ProgramState& ps, S, F) {
      if (ps.lastDir) ps.regs.dir = *ps.lastDir;  // keep running ahead
      ps.counters.Ntime = 0;  // timeout counts from the catch, as in Bounce
      return EntryResult::proceed();
    };
    s.direction = dreg;
    s.guards = {Guard{"size-or-met",
                      [](P p, S, F f) {
                        return (p.regs.knownN != 0 &&
                                p.counters.Ntime > 5 * p.regs.knownN) ||
                               f.meeting || f.catches;
                      },
                      kTerminate},
                on_catched(FComm)};
  }
  {
    // B caught F again: a short return trip proves both waited on the same
    // edge, in which case B steps aside and terminates one round later.
    // Otherwise B stays one round; if F is still in the node both carry on.
    auto& s = st(a, "BComm");
    s.entry = [](ProgramState& ps, S, F) {
      ps.regs.returnSteps = ps.counters.Esteps;
      if (ps.regs.returnSteps <= 2 * ps.regs.bounceSteps) {
        ps.regs.latch = 1;
        return EntryResult::act(Action::move(opposite(ps.regs.dir)));
      }
      ps.regs.latch = 2;
      return EntryResult::act(Action::stay());
    };
    s.resume = [Bounce](ProgramState& ps, S snap, F) {
      const int latch = ps.regs.latch;
      ps.regs.latch = 0;
      if (latch == 1) return Action::terminate();
      if (!other_in_node(snap)) return Action::terminate();  // F signalled
      ps.state = Bounce;
      ps.counters.Etime = 0;
      ps.counters.Esteps = 0;
      ps.regs.dir = opposite(ps.regs.dir);  // bounce away again
      return Action::move(ps.regs.dir);
    };
  }
  {
    // Mirror image: F got caught. Knowing the size it signals by moving off;
    // otherwise it steps into the node and watches what B does.
    auto& s = st(a, "FComm");
    s.entry = [](ProgramState& ps, S, F) {
      if (ps.regs.knownN != 0) {
        ps.regs.latch = 1;
        return EntryResult::act(Action::move(ps.regs.dir));
      }
      ps.regs.latch = 2;
      return EntryResult::act(Action::stay());
    };
    s.resume = [Forward](ProgramState& ps, S snap, F) {
      const int latch = ps.regs.latch;
      ps.regs.latch = 0;
      if (latch == 1) return Action::terminate();
      if (!other_in_node(snap)) return Action::terminate();  // B signalled
      ps.state = Forward;
      ps.counters.Etime = 0;
      ps.counters.Esteps = 0;
      return Action::move(ps.regs.dir);
    };
  }
}

/// Happy / FirstBlockL / AtLandmarkL / Ready / Reverse plus the landmark
/// core: the id-based direction dance shared by both no-chirality variants.
inline void fill_landmark_id_machine(AlgorithmSpec& a) {
  const StateId Happy = a.state_index("Happy");
  const StateId AtLandmarkL = a.state_index("AtLandmarkL");
  const StateId Ready = a.state_index("Ready");
  const StateId Reverse = a.state_index("Reverse");
  const StateId Bounce = a.state_index("Bounce");
  const StateId Forward = a.state_index("Forward");

  {
    auto& s = st(a, "Happy");
    s.direction = dreg;
    s.guards = {Guard{"deadline",
                      [](P p, S, F) {
                        return p.regs.knownN != 0 &&
                               p.counters.Ttime >= direction_deadline(p.regs.knownN) + 1;
                      },
                      kTerminate},
                on_catches(Bounce), on_catched(Forward)};
  }
  {
    auto& s = st(a, "FirstBlockL");
    s.entry = [](ProgramState& ps, S, F) {
      ps.regs.dir = Dir::Right;
      ps.regs.r1 = ps.counters.Ttime;
      return EntryResult::proceed();
    };
    s.direction = dreg;
    // A catch pre-empts the id acquisition: the pair switches to the
    // caught/catcher protocol, whose signalling assumes both play along.
    s.guards = {size_known(Happy), on_catches(Bounce), on_catched(Forward),
                at_landmark(AtLandmarkL), btime_ge(1, Ready)};
  }
  {
    // Back at the landmark between the two blocking events. If both agents
    // stand here the start was symmetric: wait one round and, if the other
    // is still present, the whole ring has been swept from both sides.
    auto& s = st(a, "AtLandmarkL");
    s.entry = [](ProgramState& ps, S snap, F) {
      ps.regs.r3 = ps.counters.Etime;
      if (snap.isLandmark && !snap.others.empty()) {
        ps.regs.latch = 1;
        return EntryResult::act(Action::stay());
      }
      return EntryResult::proceed();
    };
    s.resume = [](ProgramState& ps, S snap, F) {
      ps.regs.latch = 0;
      if (snap.isLandmark && !snap.others.empty()) return Action::terminate();
      return Action::move(ps.regs.dir);
    };
    s.direction = dreg;
    s.guards = {size_known(Happy), on_catches(Bounce), on_catched(Forward),
                btime_ge(1, Ready)};
  }
  {
    auto& s = st(a, "Ready");
    s.entry = [Reverse](ProgramState& ps, S, F) {
      auto& r = ps.regs;
      r.r2 = ps.counters.Ttime - std::max(r.r1, r.r3);
      r.id = compute_id(static_cast<unsigned long long>(r.r1),
                        static_cast<unsigned long long>(r.r2),
                        static_cast<unsigned long long>(r.r3));
      r.idSet = true;
      r.sched = DirectionSchedule(r.id);
      return EntryResult::force(Reverse);
    };
    s.direction = dreg;
  }
  {
    auto& s = st(a, "Reverse");
    s.entry = [](ProgramState& ps, S, F) {
      ps.regs.dir = ps.regs.sched.direction(ps.counters.Ttime);
      return EntryResult::proceed();
    };
    s.direction = dreg;
    s.guards = {Guard{"deadline",
                      [](P p, S, F) {
                        return p.regs.knownN != 0 &&
                               p.counters.Ttime >= direction_deadline(p.regs.knownN);
                      },
                      kTerminate},
                on_catches(Bounce), on_catched(Forward),
                Guard{"switch",
                      [](P p, S, F) {
                        return p.regs.knownN == 0 &&
                               p.regs.sched.switches(p.counters.Ttime);
                      },
                      Reverse}};
  }
  fill_landmark_core(a);
}

/// Zig-zag machine shared by the no-chirality terminating variants: the
/// per-leg step count must keep growing, otherwise the ring has been swept.
inline std::shared_ptr<AlgorithmSpec> make_zigzag(const std::string& name, long N,
                                                  bool strict) {
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = name;
  a->requiredAgents = 3;
  declare_states(*a, {"Init", "Bounce", "Reverse", "MeetingR", "MeetingB"});
  const StateId Bounce = a->state_index("Bounce");
  const StateId Reverse = a->state_index("Reverse");
  const StateId MeetingR = a->state_index("MeetingR");
  const StateId MeetingB = a->state_index("MeetingB");

  auto check_d = [strict](ProgramState& ps) {  // true = terminate
    auto& d = ps.regs.d;
    const long e = ps.counters.Esteps;
    if (d > 0) {
      if (strict ? e < d : e <= d) return true;
      d = e;
    }
    return false;
  };
  auto entry_check = [check_d](ProgramState& ps, S, F) {
    if (check_d(ps)) return EntryResult::act(Action::terminate());
    return EntryResult::proceed();
  };

  {
    auto& s = st(*a, "Init");
    s.direction = dleft;
    s.guards = {esteps_ge(N, kTerminate), on_meeting(MeetingR), on_catches(Bounce)};
  }
  {
    auto& s = st(*a, "Bounce");
    s.entry = entry_check;
    s.direction = dright;
    s.guards = {esteps_ge(N, kTerminate), on_meeting(MeetingB), on_catches(Reverse)};
  }
  {
    auto& s = st(*a, "Reverse");
    s.entry = [check_d](ProgramState& ps, S, F) {
      if (ps.regs.d == 0)
        ps.regs.d = ps.counters.Esteps;  // first direction change
      else if (check_d(ps))
        return EntryResult::act(Action::terminate());
      return EntryResult::proceed();
    };
    s.direction = dleft;
    s.guards = {esteps_ge(N, kTerminate), on_meeting(MeetingR), on_catches(Bounce)};
  }
  {
    auto& s = st(*a, "MeetingR");
    s.entry = entry_check;
    s.direction = dleft;
    s.guards = {esteps_ge(N, kTerminate), on_catches(Bounce)};
  }
  {
    auto& s = st(*a, "MeetingB");
    s.entry = entry_check;
    s.direction = dright;
    s.guards = {esteps_ge(N, kTerminate), on_catches(Bounce)};
  }
  return a;
}

}  // namespace algdetail

// ---------------------------------------------------------------------------
// Fully synchronous algorithms
// ---------------------------------------------------------------------------

inline std::shared_ptr<const AlgorithmSpec> known_n_with_chirality(long N) {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "known-n-with-chirality";
  a->requiredSynchrony = Synchrony::FSYNC;
  a->requiresChirality = true;
  a->sizeKnowledge = SizeKnowledge::UpperBound;
  declare_states(*a, {"Init", "Bounce"});
  {
    auto& s = st(*a, "Init");
    s.direction = dleft;
    s.guards = {Guard{"done",
                      [N](P p, S, F) {
                        return p.counters.Ttime >= 3 * N || p.counters.Tsteps >= N;
                      },
                      kTerminate},
                on_catches(a->state_index("Bounce"))};
  }
  {
    auto& s = st(*a, "Bounce");
    s.direction = dright;
    s.guards = {ttime_ge(3 * N, kTerminate)};
  }
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> known_n_no_chirality(long N) {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "known-n-no-chirality";
  a->requiredSynchrony = Synchrony::FSYNC;
  a->sizeKnowledge = SizeKnowledge::UpperBound;
  declare_states(*a, {"Init", "Bounce", "Forward"});
  const StateId Bounce = a->state_index("Bounce");
  const StateId Forward = a->state_index("Forward");
  {
    auto& s = st(*a, "Init");
    s.direction = dleft;
    s.guards = {ttime_ge(5 * N, kTerminate),
                Guard{"blocked", [N](P p, S, F) { return p.counters.Btime == N; },
                      Bounce},
                on_catches(Bounce), on_catched(Forward)};
  }
  {
    auto& s = st(*a, "Bounce");
    s.direction = dright;
    s.guards = {ttime_ge(5 * N, kTerminate)};
  }
  {
    auto& s = st(*a, "Forward");
    s.direction = dleft;
    s.guards = {ttime_ge(5 * N, kTerminate)};
  }
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> perpetual_exploration() {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "perpetual-exploration";
  a->requiredSynchrony = Synchrony::FSYNC;
  a->terminating = false;
  a->initRegs = [](Registers& r) {
    r.N = 2;
    r.dir = Dir::Left;
  };
  declare_states(*a, {"Init", "Reverse", "Bounce", "Forward"});
  const StateId Reverse = a->state_index("Reverse");
  const StateId Bounce = a->state_index("Bounce");
  const StateId Forward = a->state_index("Forward");
  Guard doubling{"estimate-up",
                 [](P p, S, F) { return p.counters.Etime >= 2 * p.regs.N; }, Reverse};
  {
    auto& s = st(*a, "Init");
    s.direction = dreg;
    s.guards = {doubling, on_catches(Bounce), on_catched(Forward)};
  }
  {
    auto& s = st(*a, "Reverse");
    s.entry = [](ProgramState& ps, S, F) {
      ps.regs.N *= 2;
      ps.regs.dir = opposite(ps.regs.dir);
      return EntryResult::proceed();
    };
    s.direction = dreg;
    s.guards = {doubling, on_catches(Bounce), on_catched(Forward)};
  }
  st(*a, "Bounce").direction = [](const Registers& r) { return opposite(r.dir); };
  st(*a, "Forward").direction = dreg;
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> landmark_with_chirality() {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "landmark-with-chirality";
  a->requiredSynchrony = Synchrony::FSYNC;
  a->requiresChirality = true;
  a->requiresLandmark = true;
  a->usesLandmarkTracking = true;
  declare_states(*a, {"Init", "Bounce", "Return", "Forward", "BComm", "FComm"});
  {
    auto& s = st(*a, "Init");
    s.direction = dleft;
    s.guards = {ntime_gt(2, kTerminate), on_catches(a->state_index("Bounce")),
                on_catched(a->state_index("Forward"))};
  }
  fill_landmark_core(*a);
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> start_from_landmark_no_chirality() {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "start-from-landmark-no-chirality";
  a->requiredSynchrony = Synchrony::FSYNC;
  a->requiresLandmark = true;
  a->usesLandmarkTracking = true;
  a->initRegs = [](Registers& r) { r.dir = Dir::Left; };
  declare_states(*a, {"InitL", "Happy", "FirstBlockL", "AtLandmarkL", "Ready",
                      "Reverse", "Bounce", "Return", "Forward", "BComm", "FComm"});
  {
    auto& s = st(*a, "InitL");
    s.direction = dreg;
    s.guards = {size_known(a->state_index("Happy")),
                on_catches(a->state_index("Bounce")),
                on_catched(a->state_index("Forward")),
                btime_ge(1, a->state_index("FirstBlockL"))};
  }
  fill_landmark_id_machine(*a);
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> landmark_no_chirality() {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "landmark-no-chirality";
  a->requiredSynchrony = Synchrony::FSYNC;
  a->requiresLandmark = true;
  a->usesLandmarkTracking = true;
  a->initRegs = [](Registers& r) { r.dir = Dir::Left; };
  declare_states(*a, {"Init", "FirstBlock", "AtLandmark", "RestartL", "Happy",
                      "FirstBlockL", "AtLandmarkL", "Ready", "Reverse", "Bounce",
                      "Return", "Forward", "BComm", "FComm"});
  const StateId Happy = a->state_index("Happy");
  const StateId Bounce = a->state_index("Bounce");
  const StateId Forward = a->state_index("Forward");
  const StateId Ready = a->state_index("Ready");
  const StateId RestartL = a->state_index("RestartL");
  {
    auto& s = st(*a, "Init");
    s.direction = dreg;
    s.guards = {size_known(Happy), on_catches(Bounce), on_catched(Forward),
                btime_ge(1, a->state_index("FirstBlock"))};
  }
  {
    auto& s = st(*a, "FirstBlock");
    s.entry = [](ProgramState& ps, S, F) {
      ps.regs.dir = Dir::Right;
      ps.regs.r1 = ps.counters.Ttime;
      return EntryResult::proceed();
    };
    s.direction = dreg;
    s.guards = {size_known(Happy), on_catches(Bounce), on_catched(Forward),
                at_landmark(a->state_index("AtLandmark")), btime_ge(1, Ready)};
  }
  {
    // Meeting the other agent at the landmark mid-acquisition proves nothing
    // about coverage here (arbitrary starts), so both drop their partial ids
    // and rerun the start-from-landmark machine from this very node.
    auto& s = st(*a, "AtLandmark");
    s.entry = [RestartL](ProgramState& ps, S snap, F) {
      if (snap.isLandmark && !snap.others.empty()) {
        ps.regs.r1 = ps.regs.r2 = ps.regs.r3 = 0;
        ps.counters.Ttime = 0;
        return EntryResult::force(RestartL);
      }
      ps.regs.r3 = ps.counters.Etime;
      return EntryResult::proceed();
    };
    s.direction = dreg;
    s.guards = {size_known(Happy), on_catches(Bounce), on_catched(Forward),
                btime_ge(1, Ready)};
  }
  {
    auto& s = st(*a, "RestartL");
    s.direction = dreg;
    s.guards = {size_known(Happy), on_catches(Bounce), on_catched(Forward),
                btime_ge(1, a->state_index("FirstBlockL"))};
  }
  fill_landmark_id_machine(*a);
  return a;
}

// ---------------------------------------------------------------------------
// Semi-synchronous algorithms
// ---------------------------------------------------------------------------

inline std::shared_ptr<const AlgorithmSpec> pt_bound_with_chirality(long N) {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "pt-bound-with-chirality";
  a->requiredTransport = Transport::PT;
  a->requiresChirality = true;
  a->sizeKnowledge = SizeKnowledge::UpperBound;
  declare_states(*a, {"Init", "Bounce", "Reverse"});
  const StateId Bounce = a->state_index("Bounce");
  const StateId Reverse = a->state_index("Reverse");
  {
    auto& s = st(*a, "Init");
    s.direction = dleft;
    s.guards = {esteps_ge(N, kTerminate), on_catches(Bounce)};
  }
  {
    // tSL accumulates the net distance travelled left; a right leg at least
    // as long as the following left leg means both waited on the same edge.
    auto& s = st(*a, "Bounce");
    s.entry = [N](ProgramState& ps, S, F) {
      auto& r = ps.regs;
      if (r.tSL == 0) {
        r.tSL = ps.counters.Esteps;
      } else {
        r.leftSteps = ps.counters.Esteps;
        if (r.rightSteps >= r.leftSteps) return EntryResult::act(Action::terminate());
        r.tSL += r.leftSteps - r.rightSteps;
        if (r.tSL >= N) return EntryResult::act(Action::terminate());
      }
      return EntryResult::proceed();
    };
    s.direction = dright;
    s.guards = {esteps_ge(N, kTerminate), btime_ge(1, Reverse)};
  }
  {
    auto& s = st(*a, "Reverse");
    s.entry = [](ProgramState& ps, S, F) {
      ps.regs.rightSteps = ps.counters.Esteps;
      return EntryResult::proceed();
    };
    s.direction = dleft;
    s.guards = {esteps_ge(N, kTerminate), on_catches(Bounce)};
  }
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> pt_landmark_with_chirality(long N) {
  using namespace algdetail;
  auto base = pt_bound_with_chirality(N);
  auto a = std::make_shared<AlgorithmSpec>(*base);
  a->name = "pt-landmark-with-chirality";
  a->sizeKnowledge = SizeKnowledge::None;
  a->requiresLandmark = true;
  a->usesLandmarkTracking = true;
  // Looping around the landmark is a further proof of coverage.
  for (auto& s : a->states)
    s.guards.insert(s.guards.begin(), size_known(kTerminate));
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> pt_bound_no_chirality(long N) {
  auto a = algdetail::make_zigzag("pt-bound-no-chirality", N, /*strict=*/false);
  a->requiredTransport = Transport::PT;
  a->sizeKnowledge = SizeKnowledge::UpperBound;
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> et_bound_no_chirality(long n) {
  auto a = algdetail::make_zigzag("et-bound-no-chirality", n - 1, /*strict=*/true);
  a->requiredTransport = Transport::ET;
  a->sizeKnowledge = SizeKnowledge::Exact;
  return a;
}

inline std::shared_ptr<const AlgorithmSpec> et_perpetual_with_chirality() {
  using namespace algdetail;
  auto a = std::make_shared<AlgorithmSpec>();
  a->name = "et-perpetual-with-chirality";
  a->requiredTransport = Transport::ET;
  a->requiresChirality = true;
  a->terminating = false;
  declare_states(*a, {"Init", "Bounce"});
  {
    auto& s = st(*a, "Init");
    s.direction = dleft;
    s.guards = {on_catches(a->state_index("Bounce"))};
  }
  st(*a, "Bounce").direction = dright;
  return a;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// `param` is the size knowledge: the upper bound N for bounded variants, the
/// exact size n for the ET terminating variant; ignored elsewhere.
inline std::shared_ptr<const AlgorithmSpec> make_algorithm(const std::string& name,
                                                           long param) {
  if (name == "known-n-with-chirality") return known_n_with_chirality(param);
  if (name == "known-n-no-chirality") return known_n_no_chirality(param);
  if (name == "perpetual-exploration") return perpetual_exploration();
  if (name == "landmark-with-chirality") return landmark_with_chirality();
  if (name == "start-from-landmark-no-chirality")
    return start_from_landmark_no_chirality();
  if (name == "landmark-no-chirality") return landmark_no_chirality();
  if (name == "pt-bound-with-chirality") return pt_bound_with_chirality(param);
  if (name == "pt-landmark-with-chirality") return pt_landmark_with_chirality(param);
  if (name == "pt-bound-no-chirality") return pt_bound_no_chirality(param);
  if (name == "et-bound-no-chirality") return et_bound_no_chirality(param);
  if (name == "et-perpetual-with-chirality") return et_perpetual_with_chirality();
  throw std::invalid_argument("unknown algorithm: " + name);
}

inline std::vector<std::string> algorithm_names() {
  return {"known-n-with-chirality",
          "known-n-no-chirality",
          "perpetual-exploration",
          "landmark-with-chirality",
          "start-from-landmark-no-chirality",
          "landmark-no-chirality",
          "pt-bound-with-chirality",
          "pt-landmark-with-chirality",
          "pt-bound-no-chirality",
          "et-bound-no-chirality",
          "et-perpetual-with-chirality"};
}

}  // namespace dring

#endif

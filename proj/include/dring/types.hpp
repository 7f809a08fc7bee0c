#ifndef DRING_TYPES_HPP
#define DRING_TYPES_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dring {

using EdgeId = int;

/// Direction in an agent's private frame.
enum class Dir : int8_t { Left = 0, Right = 1 };

inline Dir opposite(Dir d) { return d == Dir::Left ? Dir::Right : Dir::Left; }
inline const char* to_string(Dir d) { return d == Dir::Left ? "left" : "right"; }

/// Where an agent stands within its node, in global coordinates.
/// PortMinus faces node-1, PortPlus faces node+1.
enum class Slot : int8_t { Interior = 0, PortMinus = 1, PortPlus = 2 };

inline const char* to_string(Slot s) {
  switch (s) {
    case Slot::Interior: return "interior";
    case Slot::PortMinus: return "port-";
    default: return "port+";
  }
}

enum class Synchrony : int8_t { FSYNC, SSYNC };
enum class Transport : int8_t { PT, ET, NS };

struct ExecutionModel {
  Synchrony synchrony = Synchrony::FSYNC;
  Transport transport = Transport::PT;  // meaningful only under SSYNC
  int fairnessWindow = 1;
};

struct RingTopology {
  int n = 3;
  std::optional<int> landmark;

  RingTopology() = default;
  RingTopology(int n_, std::optional<int> landmark_ = std::nullopt)
      : n(n_), landmark(landmark_) {
    if (n < 3) throw std::invalid_argument("ring size must be >= 3");
    if (landmark && (*landmark < 0 || *landmark >= n))
      throw std::invalid_argument("landmark out of range");
  }
};

/// Global step associated with a private direction, given the agent's
/// orientation. Orientation +1 maps private left onto the minus side.
inline int global_delta(Dir d, int orientation) {
  return (d == Dir::Left ? -1 : +1) * orientation;
}

inline Slot port_for_delta(int delta) {
  return delta < 0 ? Slot::PortMinus : Slot::PortPlus;
}

/// Edge crossed when leaving `node` in global direction `delta`.
inline EdgeId edge_from(int node, int delta, int n) {
  return delta < 0 ? (node + n - 1) % n : node;
}

inline EdgeId edge_of_port(int node, Slot s, int n) {
  return s == Slot::PortMinus ? (node + n - 1) % n : node;
}

inline int neighbour(int node, int delta, int n) { return (node + delta + n) % n; }

/// A port slot translated into an agent's private frame.
inline std::optional<Dir> slot_in_frame(Slot s, int orientation) {
  if (s == Slot::Interior) return std::nullopt;
  bool minus = (s == Slot::PortMinus);
  if (orientation > 0) return minus ? Dir::Left : Dir::Right;
  return minus ? Dir::Right : Dir::Left;
}

struct AgentPhysical {
  int index = 0;          // simulation-only identity, never shown to programs
  int node = 0;
  Slot slot = Slot::Interior;
  int orientation = +1;   // +1 or -1
  bool moved = false;
  bool terminated = false;
};

struct Configuration {
  RingTopology topology;
  long round = 0;
  std::vector<AgentPhysical> agents;
  std::optional<EdgeId> missingEdge;  // edge absent in the current round
  std::set<int> visited;
};

/// What one agent sees during Look, expressed in its own frame.
struct ObservedAgent {
  std::optional<Dir> pos;  // nullopt = interior
  bool moved = false;
};

struct Snapshot {
  std::optional<Dir> myPos;  // nullopt iff interior
  bool isLandmark = false;
  bool myMoved = false;
  std::vector<ObservedAgent> others;  // co-located agents
};

struct AdversaryDecision {
  std::optional<EdgeId> missingEdge;
  std::vector<int> activeSet;  // agent indices, ascending
  std::vector<int> tieBreak;   // total order on agent indices; empty = ascending
};

enum class EventType : int8_t {
  Move,             // successful traversal
  Blocked,          // on a port, edge missing
  PortDenied,       // lost port acquisition
  PassiveTransport,
  Terminated,
  Meeting,
  Catches,
  Catched,
};

struct Event {
  EventType type;
  int agent;
  long round;
  int aux = -1;  // edge id for movement events
};

inline const char* to_string(EventType t) {
  switch (t) {
    case EventType::Move: return "move";
    case EventType::Blocked: return "blocked";
    case EventType::PortDenied: return "port-denied";
    case EventType::PassiveTransport: return "passive-transport";
    case EventType::Terminated: return "terminated";
    case EventType::Meeting: return "meeting";
    case EventType::Catches: return "catches";
    default: return "catched";
  }
}

struct Violation {
  std::string kind;
  std::string detail;
  long round = -1;
};

}  // namespace dring

#endif

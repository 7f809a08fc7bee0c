#ifndef DRING_SCHEDULE_HPP
#define DRING_SCHEDULE_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "dring/types.hpp"

namespace dring {

inline int bit_length(unsigned long long v) {
  int len = 0;
  while (v) { ++len; v >>= 1; }
  return len;
}

/// Identity derived from the rounds of the first two blocks and the landmark
/// visit between them. Equal triples give equal values; the interleaving keeps
/// distinct triples distinct regardless of magnitudes.
struct AgentId {
  unsigned long long value = 0;
  int width = 0;  // common pad width of the three components

  friend bool operator==(const AgentId&, const AgentId&) = default;
};

/// Interleaves the bits of (r1, r2, r3) MSB-first, round-robin, each component
/// zero-padded to the width of the largest.
inline AgentId compute_id(unsigned long long r1, unsigned long long r2,
                          unsigned long long r3) {
  int w = bit_length(std::max({r1, r2, r3, 1ULL}));
  unsigned long long out = 0;
  for (int i = w - 1; i >= 0; --i) {
    out = (out << 1) | ((r1 >> i) & 1);
    out = (out << 1) | ((r2 >> i) & 1);
    out = (out << 1) | ((r3 >> i) & 1);
  }
  return AgentId{out, w};
}

/// Recovers (r1, r2, r3) from an id; inverse of compute_id up to shared
/// leading zeros.
inline void deinterleave_id(const AgentId& id, unsigned long long& r1,
                            unsigned long long& r2, unsigned long long& r3) {
  r1 = r2 = r3 = 0;
  unsigned long long v = id.value;
  for (int i = 0; i < id.width; ++i) {
    r3 |= (v & 1) << i; v >>= 1;
    r2 |= (v & 1) << i; v >>= 1;
    r1 |= (v & 1) << i; v >>= 1;
  }
}

inline std::string minimal_binary(unsigned long long v) {
  if (v == 0) return "0";
  std::string s;
  while (v) { s.push_back(char('0' + (v & 1))); v >>= 1; }
  std::reverse(s.begin(), s.end());
  return s;
}

/// "10" ++ minimal binary of the id ++ "0".
inline std::string s_string(const AgentId& id) {
  return "10" + minimal_binary(id.value) + "0";
}

/// Each character of s repeated k times in place.
inline std::string dup(const std::string& s, int k) {
  if (k < 1) throw std::invalid_argument("dup: k must be >= 1");
  std::string out;
  out.reserve(s.size() * static_cast<size_t>(k));
  for (char c : s) out.append(static_cast<size_t>(k), c);
  return out;
}

/// Phase containing round r: the unique j with r in (2^j - 1, 2^{j+1} - 1].
inline int phase_of(long r) {
  if (r < 2) throw std::invalid_argument("phase_of: no phase defined for r < 2");
  int j = 0;
  while ((2L << j) - 1 < r) ++j;  // smallest j with r <= 2^{j+1} - 1
  return j;
}

/// Per-round direction schedule derived from an id. Rounds in phases at or
/// below jbar steer left by convention.
struct DirectionSchedule {
  std::string sid;     // s_string of the id
  int jbar = 0;        // minimal j with 2^j >= len(sid)
  std::string padded;  // sid left-padded with zeros to length 2^jbar

  DirectionSchedule() = default;

  explicit DirectionSchedule(const AgentId& id) : sid(s_string(id)) {
    while ((1u << jbar) < sid.size()) ++jbar;
    padded = std::string((1u << jbar) - sid.size(), '0') + sid;
  }

  Dir direction(long r) const {
    if (r < 2) return Dir::Left;
    int j = phase_of(r);
    if (j <= jbar) return Dir::Left;
    long blockLen = 1L << (j - jbar);
    long index = r - ((1L << j) - 1) - 1;       // 0-based offset within phase j
    char bit = padded[static_cast<size_t>(index / blockLen)];
    return bit == '0' ? Dir::Left : Dir::Right;
  }

  bool switches(long r) const { return direction(r) != direction(r - 1); }
};

}  // namespace dring

#endif

#include <doctest.h>

#include <random>
#include <set>

#include "dring/schedule.hpp"

using namespace dring;

TEST_CASE("compute_id interleaves msb-first round-robin") {
  CHECK(compute_id(0, 0, 1).value == 1);
  CHECK(compute_id(0, 0, 1).width == 1);
  CHECK(compute_id(1, 2, 0).value == 20);  // pads 01,10,00 -> "010100"
  CHECK(compute_id(1, 2, 0).width == 2);
  CHECK(compute_id(2, 5, 0) == compute_id(2, 5, 0));
  CHECK_FALSE(compute_id(2, 5, 0) == compute_id(5, 2, 0));
  CHECK(compute_id(0, 0, 0).value == 0);
}

TEST_CASE("compute_id round-trips through deinterleave") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    unsigned long long a = rng() % 1000, b = rng() % 1000, c = rng() % 1000;
    unsigned long long a2, b2, c2;
    deinterleave_id(compute_id(a, b, c), a2, b2, c2);
    CHECK(a == a2);
    CHECK(b == b2);
    CHECK(c == c2);
  }
}

TEST_CASE("compute_id is injective over a dense grid") {
  std::set<std::pair<unsigned long long, int>> seen;
  for (unsigned long long a = 0; a < 12; ++a)
    for (unsigned long long b = 0; b < 12; ++b)
      for (unsigned long long c = 0; c < 12; ++c) {
        AgentId id = compute_id(a, b, c);
        CHECK(seen.insert({id.value, id.width}).second);
      }
}

TEST_CASE("s_string frames the minimal binary representation") {
  CHECK(s_string(AgentId{1, 1}) == "1010");
  CHECK(s_string(AgentId{5, 3}) == "101010");
  CHECK(s_string(AgentId{0, 1}) == "1000");  // b(0) = "0"
  CHECK(s_string(compute_id(1, 2, 0)).substr(0, 3) == "101");
}

TEST_CASE("dup repeats characters in place") {
  CHECK(dup("1010", 2) == "11001100");
  CHECK(dup("1010", 1) == "1010");
  CHECK(dup("10", 3) == "111000");
  CHECK_THROWS_AS(dup("10", 0), std::invalid_argument);
}

TEST_CASE("duplicated strings with k>=2 never contain 101") {
  for (unsigned long long v = 0; v < 64; ++v) {
    std::string d = dup(s_string(AgentId{v, bit_length(v ? v : 1)}), 2);
    CHECK(d.find("101") == std::string::npos);
  }
}

TEST_CASE("phase_of matches the interval decomposition") {
  CHECK(phase_of(2) == 1);
  CHECK(phase_of(3) == 1);
  CHECK(phase_of(4) == 2);
  CHECK(phase_of(5) == 2);
  CHECK(phase_of(7) == 2);
  CHECK(phase_of(8) == 3);
  CHECK(phase_of(15) == 3);
  CHECK(phase_of(16) == 4);
  CHECK_THROWS_AS(phase_of(1), std::invalid_argument);
  for (long r = 2; r < 5000; ++r) {
    int j = phase_of(r);
    CHECK((1L << j) - 1 < r);
    CHECK(r <= (1L << (j + 1)) - 1);
  }
}

TEST_CASE("direction schedule for id value 1") {
  DirectionSchedule s(AgentId{1, 1});
  CHECK(s.sid == "1010");
  CHECK(s.jbar == 2);
  CHECK(s.padded == "1010");
  // phase 3 = rounds (7,15], d = Dup("1010",2) = "11001100"
  CHECK(s.direction(8) == Dir::Right);
  CHECK(s.direction(9) == Dir::Right);
  CHECK(s.direction(10) == Dir::Left);
  CHECK(s.switches(10));
  CHECK_FALSE(s.switches(9));
  // phases at or below jbar steer left
  for (long r = 2; r <= 7; ++r) CHECK(s.direction(r) == Dir::Left);
}

TEST_CASE("direction is constant over dup blocks") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    AgentId id = compute_id(rng() % 30, rng() % 30, rng() % 30);
    DirectionSchedule s(id);
    for (int j = s.jbar + 1; j <= s.jbar + 4; ++j) {
      long blockLen = 1L << (j - s.jbar);
      long phaseStart = (1L << j) - 1 + 1;  // first round of phase j
      for (long b = 0; b < (1L << j) / blockLen; ++b) {
        Dir d0 = s.direction(phaseStart + b * blockLen);
        for (long k = 1; k < blockLen; ++k)
          CHECK(s.direction(phaseStart + b * blockLen + k) == d0);
      }
    }
  }
}

TEST_CASE("distinct ids share a long common-direction run") {
  // Schedule-level form of the common-direction property, tested by direct
  // simulation on sampled pairs with small c*n.
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    AgentId a = compute_id(rng() % 40, rng() % 40, rng() % 40);
    AgentId b = compute_id(rng() % 40, rng() % 40, rng() % 40);
    if (a == b) continue;
    DirectionSchedule sa(a), sb(b);
    const long cn = 8;
    const long len = static_cast<long>(std::max(s_string(a).size(), s_string(b).size()));
    const long deadline = 32 * ((len + 3) * cn) + 1;
    long best = 0, cur = 0;
    long bestLeftA = 0, bestRightA = 0, curL = 0, curR = 0;
    for (long r = 2; r <= deadline; ++r) {
      cur = sa.direction(r) == sb.direction(r) ? cur + 1 : 0;
      best = std::max(best, cur);
      curL = sa.direction(r) == Dir::Left ? curL + 1 : 0;
      curR = sa.direction(r) == Dir::Right ? curR + 1 : 0;
      bestLeftA = std::max(bestLeftA, curL);
      bestRightA = std::max(bestRightA, curR);
    }
    CHECK(best >= cn);
    CHECK(bestLeftA >= cn);
    CHECK(bestRightA >= cn);
  }
}

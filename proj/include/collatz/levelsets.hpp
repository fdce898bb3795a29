#pragma once

#include "collatz/nat.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace collatz {

// Encodes a seed with total stopping time m through the positions of its odd
// steps: value == 2^m/3^l - sum_{k=1..l} 2^{b_k}/3^k. b is strictly
// increasing, confined to [0, m-4] (the forced ..8,4,2,1 tail contributes no
// odd step), and empty whenever m <= 3.
struct TupleRep {
  std::vector<Steps> b;
  Steps m = 0;

  Steps l() const { return b.size(); }
};

bool tuple_valid(const TupleRep& rep);

// Exact rational value of a tuple; integrality is the caller's membership
// test. Throws std::invalid_argument when the tuple breaks the invariants.
Rat tuple_value(const TupleRep& rep);

// Brute-force enumeration of every valid tuple over b subsets of [0, m-4]
// whose value is a positive integer, paired with its value and sorted
// ascending by value. Deliberately exhaustive: this is the oracle the
// constructive route is checked against. m <= 26 keeps it under 2^23 tuples.
std::vector<std::pair<Nat, TupleRep>> enumerate_lambda(Steps m);

// Values only, ascending.
std::vector<Nat> lambda_values(Steps m);

// S_k, the set of seeds with total stopping time exactly k, computed by
// breadth-first search over preimages from S_0 = {1}: every n pulls back to
// 2n, plus (2n-1)/3 when n == 2 (mod 3), excluding the (2*2-1)/3 = 1 revisit
// of the trivial cycle so the sets partition. Sorted ascending; an optional
// bound filters the returned elements.
std::vector<Nat> level_set(Steps k, const std::optional<Nat>& bound = std::nullopt);

// All of S_0..S_max_k from one BFS pass.
std::vector<std::vector<Nat>> level_sets_up_to(Steps max_k);

// Constructive direction: reads the tuple straight off the parity trace of
// s (b = odd-step positions below sigma, m = sigma). Throws UnresolvedError
// when the orbit does not resolve within cap.
TupleRep rep_from_orbit(const Nat& s, Steps cap = kDefaultCap);

// Closed-form members with exactly one odd step: (2^m - 2^b)/3 for
// b == m (mod 2), 0 <= b <= m-4. Requires m >= 4. Ascending.
std::vector<Nat> l1_members(Steps m);

// Closed-form odd members with exactly two odd steps:
// (2^m - 3 - 2^{b_2})/9 with b_2 == m-2 (mod 6) for even m >= 10 and
// b_2 == m-4 (mod 6) for odd m >= 5, 1 <= b_2 <= m-4; empty cases m in {6,8}
// are rejected. Ascending.
std::vector<Nat> l2_odd_members(Steps m);

// Both inclusions behind the level-set equivalence, checked mechanically:
// every enumerated tuple value must have total stopping time m, and every
// BFS element must round-trip through its constructive tuple.
struct EqualityVerdict {
  Steps m = 0;
  bool lambda_in_level_set = false;
  bool level_set_in_lambda = false;
  std::size_t lambda_count = 0;
  std::size_t level_set_count = 0;
  std::vector<Nat> lambda_failures;
  std::vector<Nat> level_set_failures;

  bool equal() const {
    return lambda_in_level_set && level_set_in_lambda && lambda_count == level_set_count;
  }
};

EqualityVerdict check_equality(Steps m, Steps cap = kDefaultCap);

}  // namespace collatz

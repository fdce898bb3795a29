#pragma once

#include "collatz/nat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace collatz {

// One application of the map: (3n+1)/2 for odd n, n/2 for even n. n >= 1.
Nat step(const Nat& n);

// The same map through its closed form (n + 1/2)sin^2(pi n/2) + n/2, with the
// sin^2 factor resolved by exact parity and the rest evaluated in exact
// rational arithmetic. A deliberately independent route for equivalence tests.
Nat step_trig(const Nat& n);

// Trajectory of a seed up to the first hit of 1 (resolved) or the step cap.
struct OrbitRecord {
  Nat seed;
  std::vector<Nat> values;             // values[0] == seed
  std::vector<std::uint8_t> parities;  // parities[k] == values[k] mod 2
  std::optional<Steps> sigma;          // steps to reach 1, when resolved
  Steps cap = 0;

  bool resolved() const { return sigma.has_value(); }
};

OrbitRecord orbit(const Nat& seed, Steps cap = kDefaultCap);

// Least k with T^(k)(n) == 1 (0 for n == 1); nullopt if not within cap.
std::optional<Steps> total_stopping_time(const Nat& n, Steps cap = kDefaultCap);

// Least k with T^(k)(n) < n, defined for n >= 2; nullopt if not within cap.
std::optional<Steps> stopping_time(const Nat& n, Steps cap = kDefaultCap);

// Parities theta_0..theta_sigma of the resolved orbit of n (the final 1
// contributes the last bit). Throws UnresolvedError when the orbit does not
// resolve within cap.
std::vector<std::uint8_t> parity_trace(const Nat& n, Steps cap = kDefaultCap);

// Exponents of the exact relation 2^sigma == 3^odd_count * n + offset that
// every resolved orbit satisfies: odd_count counts odd entries among
// x_0..x_{sigma-1}, offset is what the powers leave over (always >= 0).
struct CurveParams {
  Steps odd_count = 0;
  Nat offset;
};

// n >= 2 and the orbit must resolve within cap.
CurveParams curve_params(const Nat& n, Steps cap = kDefaultCap);

}  // namespace collatz

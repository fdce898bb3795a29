#include "collatz/orbit.hpp"

#include <stdexcept>

namespace collatz {

Nat step(const Nat& n) {
  if (n < 1) throw std::invalid_argument("step: n must be >= 1");
  if (is_odd(n)) return (3 * n + 1) >> 1;
  return n >> 1;
}

Nat step_trig(const Nat& n) {
  if (n < 1) throw std::invalid_argument("step_trig: n must be >= 1");
  // sin^2(pi n / 2) is exactly n mod 2 at integers; everything else is
  // ordinary rational arithmetic, so the result must come out integral.
  const int parity = is_odd(n) ? 1 : 0;
  const Rat r = (Rat(n) + Rat(1, 2)) * parity + Rat(n) / 2;
  const Nat den = boost::multiprecision::denominator(r);
  if (den != 1) throw std::logic_error("step_trig: non-integral value");
  return boost::multiprecision::numerator(r);
}

OrbitRecord orbit(const Nat& seed, Steps cap) {
  if (seed < 1) throw std::invalid_argument("orbit: seed must be >= 1");
  OrbitRecord rec;
  rec.seed = seed;
  rec.cap = cap;
  rec.values.push_back(seed);
  rec.parities.push_back(is_odd(seed) ? 1 : 0);
  Nat v = seed;
  Steps s = 0;
  while (v != 1 && s < cap) {
    v = step(v);
    ++s;
    rec.values.push_back(v);
    rec.parities.push_back(is_odd(v) ? 1 : 0);
  }
  if (v == 1) rec.sigma = s;
  return rec;
}

std::optional<Steps> total_stopping_time(const Nat& n, Steps cap) {
  if (n < 1) throw std::invalid_argument("total_stopping_time: n must be >= 1");
  Nat v = n;
  Steps s = 0;
  while (v != 1 && s < cap) {
    v = step(v);
    ++s;
  }
  if (v == 1) return s;
  return std::nullopt;
}

std::optional<Steps> stopping_time(const Nat& n, Steps cap) {
  if (n < 2) throw std::invalid_argument("stopping_time: n must be >= 2");
  Nat v = n;
  Steps s = 0;
  while (s < cap) {
    v = step(v);
    ++s;
    if (v < n) return s;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> parity_trace(const Nat& n, Steps cap) {
  if (n < 1) throw std::invalid_argument("parity_trace: n must be >= 1");
  std::vector<std::uint8_t> bits;
  Nat v = n;
  bits.push_back(is_odd(v) ? 1 : 0);
  Steps s = 0;
  while (v != 1 && s < cap) {
    v = step(v);
    ++s;
    bits.push_back(is_odd(v) ? 1 : 0);
  }
  if (v != 1) throw UnresolvedError(n, cap);
  return bits;
}

CurveParams curve_params(const Nat& n, Steps cap) {
  if (n < 2) throw std::invalid_argument("curve_params: n must be >= 2");
  Nat v = n;
  Steps s = 0;
  Steps odd = 0;
  while (v != 1 && s < cap) {
    if (is_odd(v)) ++odd;
    v = step(v);
    ++s;
  }
  if (v != 1) throw UnresolvedError(n, cap);
  CurveParams cp;
  cp.odd_count = odd;
  cp.offset = pow2(s) - pow3(odd) * n;
  if (cp.offset < 0) throw std::logic_error("curve_params: negative offset");
  return cp;
}

}  // namespace collatz

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace collatz {

// Unbounded exact integer. Orbit values, set elements and codec outputs all
// live here; nothing in the library truncates or overflows silently.
using Nat = boost::multiprecision::cpp_int;

// Exact rational, kept in lowest terms with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

// Count of map applications.
using Steps = std::uint64_t;

// Iteration budget before an orbit is reported unresolved.
inline constexpr Steps kDefaultCap = 100000;

// An orbit failed to reach 1 within its step budget. Unresolved outcomes are
// normally plain values (empty optionals); this is thrown only by operations
// whose result is undefined without a resolved orbit.
class UnresolvedError : public std::runtime_error {
public:
  UnresolvedError(const Nat& seed, Steps cap)
      : std::runtime_error("orbit of " + seed.str() + " did not resolve within " +
                           std::to_string(cap) + " steps"),
        cap_(cap) {}
  Steps cap() const noexcept { return cap_; }

private:
  Steps cap_;
};

inline bool is_odd(const Nat& n) { return boost::multiprecision::bit_test(n, 0); }
inline bool is_even(const Nat& n) { return !is_odd(n); }

inline Nat pow2(Steps k) { return Nat(1) << k; }

Nat pow3(Steps k);

// sigma_a/ln(a) > sigma_b/ln(b), i.e. gamma comparison between two resolved
// seeds (a, b >= 2). Double fast path; falls back to the exact integer
// comparison b^sigma_a > a^sigma_b when the doubles are too close to call,
// so exact ties (gamma(4) == gamma(2)) never depend on libm rounding.
bool gamma_greater(Steps sigma_a, const Nat& a, Steps sigma_b, const Nat& b);

// "p/q" in lowest terms, or plain "p" when the denominator is 1.
std::string to_string(const Rat& r);

}  // namespace collatz

#pragma once

// Library-internal scan engine: 128-bit fast paths for the hot loops, with
// exact escapes back to Nat arithmetic when a value outgrows them. Nothing
// here is part of the public surface.

#include "collatz/accel.hpp"
#include "collatz/nat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace collatz::detail {

using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~u128{0};
inline constexpr u128 kStepSafe = (kU128Max - 1) / 3;  // largest v with 3v+1 in range

// 64-bit mirror of a WindowTable.
struct FastTable {
  int w = 0;
  std::uint64_t mask = 0;
  std::uint64_t threshold = 0;           // 2^w
  u128 jump_safe = 0;                    // largest v whose jump stays in range
  std::vector<std::uint8_t> e;
  std::vector<std::uint64_t> c;
  std::vector<std::uint64_t> p3;         // 3^0..3^w

  explicit FastTable(const WindowTable& t);
};

enum class FastStatus { Resolved, CapExceeded, Overflow };

struct FastOutcome {
  FastStatus status = FastStatus::Resolved;
  u128 value = 0;  // current value when not resolved
  Steps steps = 0;
};

// Window-accelerated descent to 1 starting from v with `steps` already on the
// clock. Jumps only while v >= 2^w and a full window fits under cap.
FastOutcome sigma_fast(u128 v, Steps steps, Steps cap, const FastTable& ft);

// Exact continuation of sigma_fast in Nat arithmetic (overflow escapes land
// here; also the whole path for seeds beyond 128 bits).
std::optional<Steps> sigma_nat(Nat v, Steps steps, Steps cap, const WindowTable& table);

// Total stopping time of a 64-bit seed.
std::optional<Steps> sigma_u64(std::uint64_t seed, const WindowTable& table,
                               const FastTable& ft, Steps cap);

// Stopping time and total stopping time of one seed, sharing a single pass:
// single steps to the first value below the seed, then jumps to 1.
struct SeedScan {
  std::optional<Steps> stopping;
  std::optional<Steps> sigma;
};

SeedScan scan_seed(std::uint64_t seed, const WindowTable& table, const FastTable& ft,
                   Steps cap);

Nat u128_to_nat(u128 v);
u128 nat_to_u128(const Nat& n);  // requires n < 2^128

}  // namespace collatz::detail

#pragma once

#include "collatz/nat.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz {

// w fused map steps on one residue class mod 2^w: for every x == j (mod 2^w),
// T^(w)(x) == (3^odd_count * x + offset) >> w. odd_count <= w, and offset
// stays below 3^w, so a 64-bit field is exact for every supported width.
struct WindowEntry {
  std::uint8_t odd_count = 0;
  std::uint64_t offset = 0;
};

struct WindowTable {
  int width = 0;                     // w
  std::vector<WindowEntry> entries;  // 2^w entries indexed by residue

  std::uint64_t residue_mask() const { return (std::uint64_t{1} << width) - 1; }
};

inline constexpr int kMinWindow = 1;
inline constexpr int kMaxWindow = 24;
inline constexpr int kDefaultWindow = 8;

// Builds the table by iterating each residue class symbolically for w steps;
// the parity sequence over w steps depends only on x mod 2^w.
WindowTable build_window_table(int width);

// T^(w)(n) through the table. Exactly w single steps.
Nat accel_step(const WindowTable& table, const Nat& n);

// Same value as total_stopping_time(n, cap): window jumps while the value is
// >= 2^w (a jump from there can never pass through 1 mid-window), single
// steps below, so the first hit of 1 is observed exactly.
std::optional<Steps> accel_total_stopping_time(const Nat& n, const WindowTable& table,
                                               Steps cap = kDefaultCap);

// First step count t at which the orbit of n has seen few enough odd steps
// that 3^(odd steps) < 2^t; the residue n mod 2^t then names the affine map
// with slope below 1 that n witnesses.
struct ContractionWitness {
  Steps window = 0;  // t
  Nat residue;       // n mod 2^t
};

std::optional<ContractionWitness> c4_witness(const Nat& n, Steps cap = kDefaultCap);

// ----- checkpointed range scans -----

class CheckpointError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ScanRecord {
  std::string kind;
  Nat seed;
  Nat value;
};

// Resumable scan state. Serialized as a canonical JSON document: integers in
// decimal (as strings, since values are unbounded), keys in fixed order, so
// writers are byte-reproducible.
struct Checkpoint {
  int format_version = 1;
  Nat range_lo;
  Nat range_hi;
  Nat next_unverified;
  int window_width = kDefaultWindow;
  std::vector<ScanRecord> records;
};

std::string serialize_checkpoint(const Checkpoint& cp);
Checkpoint parse_checkpoint(const std::string& text);  // throws CheckpointError

// Running extrema over the seeds scanned so far. Merging is done in seed
// order with strict-greater updates, so chunked and resumed scans reproduce
// the uninterrupted result exactly.
struct VerifyStats {
  bool any = false;
  Nat seeds_scanned;
  Nat non_descending;         // seeds with no descent within cap
  Nat first_non_descending;   // 0 when none
  Nat unresolved_sigma;       // seeds that descended but did not reach 1 within cap
  Steps max_stopping = 0;
  Nat max_stopping_seed;
  Steps max_sigma = 0;
  Nat max_sigma_seed;
  Steps max_gamma_sigma = 0;
  Nat max_gamma_seed;
};

struct VerifyOptions {
  Steps cap = kDefaultCap;
  std::uint64_t checkpoint_interval = 0;  // seeds between on_checkpoint calls (0 = only at the end)
  std::uint64_t stop_after = 0;           // process at most this many seeds (0 = run to range_hi)
  unsigned threads = 1;
  std::function<void(const Checkpoint&)> on_checkpoint;
};

struct VerifyResult {
  VerifyStats stats;
  Checkpoint checkpoint;
  bool complete = false;
};

// Descent scan over [lo, hi], 2 <= lo <= hi: per seed, single-steps to the
// first value below the seed (its stopping time), then continues with window
// jumps to 1 (its total stopping time), folding both and gamma into running
// maxima. Resumes from a prior checkpoint when given; throws CheckpointError
// on version or range/window mismatch.
VerifyResult verify_range(const Nat& lo, const Nat& hi, const WindowTable& table,
                          const std::optional<Checkpoint>& resume = std::nullopt,
                          const VerifyOptions& options = {});

}  // namespace collatz

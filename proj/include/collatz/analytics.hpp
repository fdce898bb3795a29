#pragma once

#include "collatz/accel.hpp"
#include "collatz/nat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace collatz {

// Scaled total stopping time sigma(n)/ln(n), n >= 2. Throws UnresolvedError
// when the orbit does not resolve within cap.
double gamma(const Nat& n, Steps cap = kDefaultCap);

enum class RecordKind { AnRecord, Candidate };

struct RecordEntry {
  Nat seed;
  Steps sigma = 0;
  double gamma = 0.0;
  RecordKind kind = RecordKind::AnRecord;
};

// Seeds whose gamma strictly exceeds every earlier gamma, scanning
// 3..limit with the running maximum seeded at n = 2. Ties never create
// records (gamma(4) == gamma(2) exactly). Uses accelerated stopping times
// with a direct-iteration cross-check on every 100th seed. Multi-threaded
// scans merge per-chunk candidates in seed order, so output is identical
// for any thread count.
std::vector<RecordEntry> an_scan(std::uint64_t limit, const WindowTable& table,
                                 unsigned threads = 1, Steps cap = kDefaultCap);

// Count of 2 <= k <= m whose total stopping time repeats the previous
// seed's: sigma(k) == sigma(k-1). m >= 2.
Steps zeta(std::uint64_t m, const WindowTable& table, Steps cap = kDefaultCap);

// zeta for every index at once: entry [k] is zeta(k), valid for k >= 2.
std::vector<Steps> zeta_series(std::uint64_t m, const WindowTable& table,
                               Steps cap = kDefaultCap);

double zeta_ratio(std::uint64_t m, const WindowTable& table, Steps cap = kDefaultCap);

// Cosine of the angle between the resolved orbit vector V = (x_0..x_sigma)
// and its cyclic left shift: <V, LV> / <V, V>, both dot products exact.
struct AngleParts {
  Nat dot;    // <V, LV>
  Nat norm2;  // <V, V>
};

AngleParts orbit_angle_exact(const Nat& seed, Steps cap = kDefaultCap);
double orbit_angle(const Nat& seed, Steps cap = kDefaultCap);

// Level-set sizes with consecutive growth ratios; evidence report only.
struct GrowthRow {
  Steps k = 0;
  std::size_t count = 0;
  std::optional<double> ratio;  // count_k / count_{k-1}, absent at k = 0
};

// K <= 40 (set sizes grow geometrically).
std::vector<GrowthRow> level_set_growth(Steps K);

// Published list of seeds beyond the last verified record whose gamma may
// extend the record sequence.
const std::vector<Nat>& default_candidate_seeds();

struct CandidateReport {
  std::vector<RecordEntry> entries;
  bool increasing = false;  // strictly, across the list in the given order
  std::size_t first_decrease = 0;  // index i where entries[i] fails to exceed entries[i-1]
};

CandidateReport candidate_check(const std::vector<Nat>& seeds, const WindowTable& table,
                                Steps cap = kDefaultCap);

}  // namespace collatz

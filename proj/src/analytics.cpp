#include "collatz/analytics.hpp"

#include "collatz/levelsets.hpp"
#include "collatz/orbit.hpp"
#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace collatz {

double gamma(const Nat& n, Steps cap) {
  if (n < 2) throw std::invalid_argument("gamma: n must be >= 2");
  const auto sigma = total_stopping_time(n, cap);
  if (!sigma) throw UnresolvedError(n, cap);
  return static_cast<double>(*sigma) / std::log(n.convert_to<double>());
}

// ----- record scan -----

namespace {

struct ChunkResult {
  // seeds that exceed every gamma earlier in their own chunk; a global
  // record is always among them, so an ordered merge recovers exactly the
  // single-threaded output
  std::vector<RecordEntry> candidates;
};

ChunkResult scan_chunk(std::uint64_t lo, std::uint64_t hi, const WindowTable& table,
                       const detail::FastTable& ft, Steps cap) {
  ChunkResult out;
  Steps best_sigma = 0;
  std::uint64_t best_seed = 0;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const auto sigma = detail::sigma_u64(n, table, ft, cap);
    if (!sigma) throw UnresolvedError(Nat(n), cap);
    if (n % 100 == 0) {  // cross-check the accelerated route against plain steps
      const auto direct = total_stopping_time(Nat(n), cap);
      if (!direct || *direct != *sigma)
        throw std::logic_error("an_scan: accelerated sigma mismatch at " + std::to_string(n));
    }
    if (best_seed == 0 || gamma_greater(*sigma, Nat(n), best_sigma, Nat(best_seed))) {
      best_sigma = *sigma;
      best_seed = n;
      RecordEntry e;
      e.seed = n;
      e.sigma = *sigma;
      e.gamma = static_cast<double>(*sigma) / std::log(static_cast<double>(n));
      e.kind = RecordKind::AnRecord;
      out.candidates.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace

std::vector<RecordEntry> an_scan(std::uint64_t limit, const WindowTable& table,
                                 unsigned threads, Steps cap) {
  if (limit < 3) throw std::invalid_argument("an_scan: limit must be >= 3");
  const detail::FastTable ft(table);
  threads = std::max(1u, threads);

  std::vector<ChunkResult> chunks;
  if (threads == 1 || limit - 3 < 4 * threads) {
    chunks.push_back(scan_chunk(3, limit, table, ft, cap));
  } else {
    chunks.resize(threads);
    std::vector<std::thread> pool;
    const std::uint64_t span = (limit - 3 + 1) / threads;
    for (unsigned i = 0; i < threads; ++i) {
      const std::uint64_t a = 3 + i * span;
      const std::uint64_t b = (i + 1 == threads) ? limit : a + span - 1;
      pool.emplace_back([&, i, a, b] { chunks[i] = scan_chunk(a, b, table, ft, cap); });
    }
    for (auto& t : pool) t.join();
  }

  // running maximum seeded at n = 2; merge candidates in seed order
  std::vector<RecordEntry> records;
  Steps best_sigma = 1;
  Nat best_seed = 2;
  for (const ChunkResult& ch : chunks) {
    for (const RecordEntry& e : ch.candidates) {
      if (gamma_greater(e.sigma, e.seed, best_sigma, best_seed)) {
        best_sigma = e.sigma;
        best_seed = e.seed;
        records.push_back(e);
      }
    }
  }
  return records;
}

// ----- repeated-sigma counter -----

std::vector<Steps> zeta_series(std::uint64_t m, const WindowTable& table, Steps cap) {
  if (m < 2) throw std::invalid_argument("zeta_series: m must be >= 2");
  const detail::FastTable ft(table);
  std::vector<Steps> series(m + 1, 0);
  Steps count = 0;
  auto prev = detail::sigma_u64(2, table, ft, cap);
  series[2] = 0;
  for (std::uint64_t k = 3; k <= m; ++k) {
    const auto cur = detail::sigma_u64(k, table, ft, cap);
    if (!cur || !prev) throw UnresolvedError(Nat(k), cap);
    if (*cur == *prev) ++count;
    series[k] = count;
    prev = cur;
  }
  return series;
}

Steps zeta(std::uint64_t m, const WindowTable& table, Steps cap) {
  return zeta_series(m, table, cap).back();
}

double zeta_ratio(std::uint64_t m, const WindowTable& table, Steps cap) {
  return static_cast<double>(zeta(m, table, cap)) / static_cast<double>(m);
}

// ----- orbit angle -----

AngleParts orbit_angle_exact(const Nat& seed, Steps cap) {
  if (seed < 2) throw std::invalid_argument("orbit_angle: seed must be >= 2");
  const OrbitRecord rec = orbit(seed, cap);
  if (!rec.resolved()) throw UnresolvedError(seed, cap);
  const std::vector<Nat>& v = rec.values;
  AngleParts parts;
  parts.dot = 0;
  parts.norm2 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    parts.dot += v[i] * v[(i + 1) % v.size()];  // cyclic left shift
    parts.norm2 += v[i] * v[i];
  }
  return parts;
}

double orbit_angle(const Nat& seed, Steps cap) {
  const AngleParts p = orbit_angle_exact(seed, cap);
  return p.dot.convert_to<double>() / p.norm2.convert_to<double>();
}

// ----- level-set growth -----

std::vector<GrowthRow> level_set_growth(Steps K) {
  if (K > 40) throw std::invalid_argument("level_set_growth: K must be <= 40");
  const auto sets = level_sets_up_to(K);
  std::vector<GrowthRow> rows;
  for (Steps k = 0; k <= K; ++k) {
    GrowthRow row;
    row.k = k;
    row.count = sets[k].size();
    if (k > 0)
      row.ratio = static_cast<double>(sets[k].size()) / static_cast<double>(sets[k - 1].size());
    rows.push_back(row);
  }
  return rows;
}

// ----- candidate seeds -----

const std::vector<Nat>& default_candidate_seeds() {
  static const std::vector<Nat> seeds = {
      Nat("6649279"),         Nat("8400511"),       Nat("11200681"),
      Nat("15733191"),        Nat("63728127"),      Nat("3743559068799"),
      Nat("100759293214567")};
  return seeds;
}

CandidateReport candidate_check(const std::vector<Nat>& seeds, const WindowTable& table,
                                Steps cap) {
  CandidateReport report;
  report.increasing = true;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto sigma = accel_total_stopping_time(seeds[i], table, cap);
    if (!sigma) throw UnresolvedError(seeds[i], cap);
    RecordEntry e;
    e.seed = seeds[i];
    e.sigma = *sigma;
    e.gamma = static_cast<double>(*sigma) / std::log(seeds[i].convert_to<double>());
    e.kind = RecordKind::Candidate;
    report.entries.push_back(std::move(e));
    if (i > 0 && report.increasing) {
      const RecordEntry& prev = report.entries[i - 1];
      const RecordEntry& cur = report.entries[i];
      if (!gamma_greater(cur.sigma, cur.seed, prev.sigma, prev.seed)) {
        report.increasing = false;
        report.first_decrease = i;
      }
    }
  }
  return report;
}

}  // namespace collatz

#include "collatz/accel.hpp"

#include "collatz/orbit.hpp"
#include "engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

namespace collatz {

// ----- window tables -----

WindowTable build_window_table(int width) {
  if (width < kMinWindow || width > kMaxWindow)
    throw std::invalid_argument("build_window_table: width must be in [1, 24]");
  const int w = width;
  std::uint64_t p3[kMaxWindow + 1];
  p3[0] = 1;
  for (int i = 1; i <= w; ++i) p3[i] = p3[i - 1] * 3;

  WindowTable table;
  table.width = w;
  table.entries.resize(std::uint64_t{1} << w);
  for (std::uint64_t j = 0; j < table.entries.size(); ++j) {
    // After t steps the class map is (3^e x + c)/2^t; its parity on the whole
    // class x == j (mod 2^w) is bit t of 3^e j + c, which stays within u64
    // for w <= 24 (3^24 * 2^24 < 2^63).
    std::uint32_t e = 0;
    std::uint64_t c = 0;
    for (int t = 0; t < w; ++t) {
      const std::uint64_t num = p3[e] * j + c;
      if ((num >> t) & 1) {
        c = 3 * c + (std::uint64_t{1} << t);
        ++e;
      }
    }
    table.entries[j] = WindowEntry{static_cast<std::uint8_t>(e), c};
  }
  return table;
}

Nat accel_step(const WindowTable& table, const Nat& n) {
  if (n < 1) throw std::invalid_argument("accel_step: n must be >= 1");
  const std::uint64_t j = static_cast<std::uint64_t>(n & table.residue_mask());
  const WindowEntry& en = table.entries[j];
  return (pow3(en.odd_count) * n + en.offset) >> table.width;
}

// ----- fast engine -----

namespace detail {

FastTable::FastTable(const WindowTable& t) : w(t.width) {
  mask = t.residue_mask();
  threshold = std::uint64_t{1} << w;
  e.resize(t.entries.size());
  c.resize(t.entries.size());
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    e[i] = t.entries[i].odd_count;
    c[i] = t.entries[i].offset;
  }
  p3.resize(w + 1);
  p3[0] = 1;
  for (int i = 1; i <= w; ++i) p3[i] = p3[i - 1] * 3;
  jump_safe = (kU128Max - p3[w]) / p3[w];
}

Nat u128_to_nat(u128 v) {
  Nat hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | static_cast<std::uint64_t>(v);
}

u128 nat_to_u128(const Nat& n) {
  const Nat lo = n & ((Nat(1) << 64) - 1);
  const Nat hi = n >> 64;
  return (static_cast<u128>(hi.convert_to<std::uint64_t>()) << 64) |
         lo.convert_to<std::uint64_t>();
}

FastOutcome sigma_fast(u128 v, Steps steps, Steps cap, const FastTable& ft) {
  while (true) {
    if (v == 1) return {FastStatus::Resolved, v, steps};
    if (steps >= cap) return {FastStatus::CapExceeded, v, steps};
    if (v >= ft.threshold && steps + ft.w <= cap) {
      if (v > ft.jump_safe) return {FastStatus::Overflow, v, steps};
      const std::uint64_t j = static_cast<std::uint64_t>(v) & ft.mask;
      v = (ft.p3[ft.e[j]] * v + ft.c[j]) >> ft.w;
      steps += ft.w;
    } else {
      if (v & 1) {
        if (v > kStepSafe) return {FastStatus::Overflow, v, steps};
        v = (3 * v + 1) >> 1;
      } else {
        v >>= 1;
      }
      ++steps;
    }
  }
}

std::optional<Steps> sigma_nat(Nat v, Steps steps, Steps cap, const WindowTable& table) {
  const Nat threshold = pow2(table.width);
  const Steps w = table.width;
  while (true) {
    if (v == 1) return steps;
    if (steps >= cap) return std::nullopt;
    if (v >= threshold && steps + w <= cap) {
      const std::uint64_t j = static_cast<std::uint64_t>(v & table.residue_mask());
      const WindowEntry& en = table.entries[j];
      v = (pow3(en.odd_count) * v + en.offset) >> table.width;
      steps += w;
    } else {
      v = step(v);
      ++steps;
    }
  }
}

namespace {

std::optional<Steps> finish(const FastOutcome& out, Steps cap, const WindowTable& table) {
  switch (out.status) {
    case FastStatus::Resolved:
      return out.steps;
    case FastStatus::CapExceeded:
      return std::nullopt;
    case FastStatus::Overflow:
      return sigma_nat(u128_to_nat(out.value), out.steps, cap, table);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Steps> sigma_u64(std::uint64_t seed, const WindowTable& table,
                               const FastTable& ft, Steps cap) {
  return finish(sigma_fast(seed, 0, cap, ft), cap, table);
}

SeedScan scan_seed(std::uint64_t seed, const WindowTable& table, const FastTable& ft,
                   Steps cap) {
  SeedScan out;
  // descent phase: plain steps until the value drops below the seed
  u128 v = seed;
  Steps k = 0;
  while (true) {
    if (k >= cap) return out;  // neither stopping time nor sigma within cap
    if (v & 1) {
      if (v > kStepSafe) {
        // continue the descent phase exactly in Nat arithmetic
        Nat nv = u128_to_nat(v);
        while (k < cap) {
          nv = step(nv);
          ++k;
          if (nv < seed) {
            out.stopping = k;
            out.sigma = sigma_nat(nv, k, cap, table);
            return out;
          }
        }
        return out;
      }
      v = (3 * v + 1) >> 1;
    } else {
      v >>= 1;
    }
    ++k;
    if (v < seed) break;
  }
  out.stopping = k;
  out.sigma = finish(sigma_fast(v, k, cap, ft), cap, table);
  return out;
}

}  // namespace detail

std::optional<Steps> accel_total_stopping_time(const Nat& n, const WindowTable& table,
                                               Steps cap) {
  if (n < 1) throw std::invalid_argument("accel_total_stopping_time: n must be >= 1");
  if (boost::multiprecision::msb(n) >= 127)
    return detail::sigma_nat(n, 0, cap, table);
  const detail::FastTable ft(table);
  return detail::finish(detail::sigma_fast(detail::nat_to_u128(n), 0, cap, ft), cap, table);
}

std::optional<ContractionWitness> c4_witness(const Nat& n, Steps cap) {
  if (n < 2) throw std::invalid_argument("c4_witness: n must be >= 2");
  Nat v = n;
  Nat p3 = 1;  // 3^(odd steps so far)
  Steps t = 0;
  while (t < cap) {
    if (is_odd(v)) p3 *= 3;
    v = step(v);
    ++t;
    // 3^e < 2^t exactly when 3^e has at most t bits (powers can't be equal)
    if (boost::multiprecision::msb(p3) < t) {
      ContractionWitness w;
      w.window = t;
      w.residue = n & (pow2(t) - 1);
      return w;
    }
  }
  return std::nullopt;
}

// ----- checkpoints -----

namespace {

constexpr const char* kKindGamma = "max_gamma";
constexpr const char* kKindStopping = "max_stopping_time";
constexpr const char* kKindSigma = "max_total_stopping_time";
constexpr const char* kKindNonDescending = "non_descending";
constexpr const char* kKindUnresolved = "unresolved_sigma";

Nat nat_from_decimal(const std::string& s, const char* field) {
  if (s.empty() || (s.size() > 1 && s[0] == '0') ||
      s.find_first_not_of("0123456789") != std::string::npos)
    throw CheckpointError(std::string("checkpoint: bad decimal value for ") + field);
  return Nat(s);
}

std::vector<ScanRecord> records_from_stats(const VerifyStats& st) {
  std::vector<ScanRecord> recs;
  if (!st.any) return recs;
  recs.push_back({kKindGamma, st.max_gamma_seed, Nat(st.max_gamma_sigma)});
  recs.push_back({kKindStopping, st.max_stopping_seed, Nat(st.max_stopping)});
  recs.push_back({kKindSigma, st.max_sigma_seed, Nat(st.max_sigma)});
  recs.push_back({kKindNonDescending, st.first_non_descending, st.non_descending});
  recs.push_back({kKindUnresolved, Nat(0), st.unresolved_sigma});
  return recs;
}

VerifyStats stats_from_records(const std::vector<ScanRecord>& recs, const Nat& scanned) {
  VerifyStats st;
  st.seeds_scanned = scanned;
  if (recs.empty()) return st;
  st.any = true;
  for (const ScanRecord& r : recs) {
    if (r.kind == kKindGamma) {
      st.max_gamma_seed = r.seed;
      st.max_gamma_sigma = r.value.convert_to<Steps>();
    } else if (r.kind == kKindStopping) {
      st.max_stopping_seed = r.seed;
      st.max_stopping = r.value.convert_to<Steps>();
    } else if (r.kind == kKindSigma) {
      st.max_sigma_seed = r.seed;
      st.max_sigma = r.value.convert_to<Steps>();
    } else if (r.kind == kKindNonDescending) {
      st.first_non_descending = r.seed;
      st.non_descending = r.value;
    } else if (r.kind == kKindUnresolved) {
      st.unresolved_sigma = r.value;
    } else {
      throw CheckpointError("checkpoint: unknown record kind '" + r.kind + "'");
    }
  }
  return st;
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& cp) {
  nlohmann::json j;
  j["format_version"] = cp.format_version;
  j["range_lo"] = cp.range_lo.str();
  j["range_hi"] = cp.range_hi.str();
  j["next_unverified"] = cp.next_unverified.str();
  j["window_width"] = cp.window_width;
  nlohmann::json recs = nlohmann::json::array();
  for (const ScanRecord& r : cp.records) {
    nlohmann::json jr;
    jr["kind"] = r.kind;
    jr["seed"] = r.seed.str();
    jr["value"] = r.value.str();
    recs.push_back(jr);
  }
  j["records"] = recs;
  return j.dump(2) + "\n";
}

Checkpoint parse_checkpoint(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("checkpoint: malformed document: ") + e.what());
  }
  if (!j.is_object()) throw CheckpointError("checkpoint: not a key/value document");
  for (const char* field :
       {"format_version", "range_lo", "range_hi", "next_unverified", "window_width", "records"})
    if (!j.contains(field))
      throw CheckpointError(std::string("checkpoint: missing field ") + field);
  if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != 1)
    throw CheckpointError("checkpoint: unsupported format_version");

  Checkpoint cp;
  cp.format_version = 1;
  cp.range_lo = nat_from_decimal(j["range_lo"].get<std::string>(), "range_lo");
  cp.range_hi = nat_from_decimal(j["range_hi"].get<std::string>(), "range_hi");
  cp.next_unverified = nat_from_decimal(j["next_unverified"].get<std::string>(), "next_unverified");
  if (!j["window_width"].is_number_integer())
    throw CheckpointError("checkpoint: window_width must be an integer");
  cp.window_width = j["window_width"].get<int>();
  if (!j["records"].is_array()) throw CheckpointError("checkpoint: records must be a list");
  for (const auto& jr : j["records"]) {
    if (!jr.is_object() || !jr.contains("kind") || !jr.contains("seed") || !jr.contains("value"))
      throw CheckpointError("checkpoint: malformed record");
    ScanRecord r;
    r.kind = jr["kind"].get<std::string>();
    r.seed = nat_from_decimal(jr["seed"].get<std::string>(), "record seed");
    r.value = nat_from_decimal(jr["value"].get<std::string>(), "record value");
    cp.records.push_back(std::move(r));
  }
  return cp;
}

// ----- range verification -----

namespace {

// Fold one scanned seed into running stats. Seeds must arrive in order.
void fold_seed(VerifyStats& st, const Nat& seed, const detail::SeedScan& scan) {
  st.any = true;
  st.seeds_scanned += 1;
  if (!scan.stopping) {
    st.non_descending += 1;
    if (st.first_non_descending == 0) st.first_non_descending = seed;
    return;
  }
  if (*scan.stopping > st.max_stopping) {
    st.max_stopping = *scan.stopping;
    st.max_stopping_seed = seed;
  }
  if (!scan.sigma) {
    st.unresolved_sigma += 1;
    return;
  }
  if (*scan.sigma > st.max_sigma) {
    st.max_sigma = *scan.sigma;
    st.max_sigma_seed = seed;
  }
  if (st.max_gamma_seed == 0 ||
      gamma_greater(*scan.sigma, seed, st.max_gamma_sigma, st.max_gamma_seed)) {
    st.max_gamma_sigma = *scan.sigma;
    st.max_gamma_seed = seed;
  }
}

// Merge stats of two adjacent sub-ranges (a before b in seed order).
void merge_stats(VerifyStats& a, const VerifyStats& b) {
  if (!b.any) return;
  if (!a.any) {
    a = b;
    return;
  }
  a.seeds_scanned += b.seeds_scanned;
  a.non_descending += b.non_descending;
  if (a.first_non_descending == 0) a.first_non_descending = b.first_non_descending;
  a.unresolved_sigma += b.unresolved_sigma;
  if (b.max_stopping > a.max_stopping) {
    a.max_stopping = b.max_stopping;
    a.max_stopping_seed = b.max_stopping_seed;
  }
  if (b.max_sigma > a.max_sigma) {
    a.max_sigma = b.max_sigma;
    a.max_sigma_seed = b.max_sigma_seed;
  }
  if (b.max_gamma_seed != 0 &&
      (a.max_gamma_seed == 0 ||
       gamma_greater(b.max_gamma_sigma, b.max_gamma_seed, a.max_gamma_sigma, a.max_gamma_seed))) {
    a.max_gamma_sigma = b.max_gamma_sigma;
    a.max_gamma_seed = b.max_gamma_seed;
  }
}

VerifyStats scan_subrange(std::uint64_t lo, std::uint64_t hi, const WindowTable& table,
                          const detail::FastTable& ft, Steps cap) {
  VerifyStats st;
  for (std::uint64_t n = lo; n <= hi; ++n)
    fold_seed(st, Nat(n), detail::scan_seed(n, table, ft, cap));
  return st;
}

}  // namespace

VerifyResult verify_range(const Nat& lo, const Nat& hi, const WindowTable& table,
                          const std::optional<Checkpoint>& resume,
                          const VerifyOptions& options) {
  if (lo < 2) throw std::invalid_argument("verify_range: lo must be >= 2");
  if (hi < lo) throw std::invalid_argument("verify_range: hi must be >= lo");
  if (hi > (Nat(1) << 62))
    throw std::invalid_argument("verify_range: range beyond 2^62 not supported");

  Checkpoint cp;
  if (resume) {
    cp = *resume;
    if (cp.format_version != 1)
      throw CheckpointError("checkpoint: unsupported format_version");
    if (cp.range_lo != lo || cp.range_hi != hi)
      throw CheckpointError("checkpoint: range mismatch (file covers " + cp.range_lo.str() +
                            ".." + cp.range_hi.str() + ")");
    if (cp.window_width != table.width)
      throw CheckpointError("checkpoint: window width mismatch");
    if (cp.next_unverified < lo || cp.next_unverified > hi + 1)
      throw CheckpointError("checkpoint: next_unverified outside range");
  } else {
    cp.range_lo = lo;
    cp.range_hi = hi;
    cp.next_unverified = lo;
    cp.window_width = table.width;
  }

  VerifyStats stats = stats_from_records(cp.records, cp.next_unverified - lo);
  const detail::FastTable ft(table);
  const unsigned threads = std::max(1u, options.threads);

  std::uint64_t next = cp.next_unverified.convert_to<std::uint64_t>();
  const std::uint64_t last = hi.convert_to<std::uint64_t>();
  std::uint64_t budget = options.stop_after;  // 0 = unlimited

  const std::uint64_t default_batch = options.checkpoint_interval
                                          ? options.checkpoint_interval
                                          : std::uint64_t{1} << 20;
  while (next <= last && (options.stop_after == 0 || budget > 0)) {
    std::uint64_t batch = std::min<std::uint64_t>(default_batch, last - next + 1);
    if (options.stop_after != 0) batch = std::min(batch, budget);
    const std::uint64_t batch_hi = next + batch - 1;

    if (threads == 1 || batch < 2 * threads) {
      merge_stats(stats, scan_subrange(next, batch_hi, table, ft, options.cap));
    } else {
      std::vector<VerifyStats> parts(threads);
      std::vector<std::thread> pool;
      const std::uint64_t chunk = batch / threads;
      for (unsigned i = 0; i < threads; ++i) {
        const std::uint64_t a = next + i * chunk;
        const std::uint64_t b = (i + 1 == threads) ? batch_hi : a + chunk - 1;
        pool.emplace_back([&, i, a, b] {
          parts[i] = scan_subrange(a, b, table, ft, options.cap);
        });
      }
      for (auto& t : pool) t.join();
      for (const VerifyStats& p : parts) merge_stats(stats, p);
    }

    next = batch_hi + 1;
    if (options.stop_after != 0) budget -= batch;
    cp.next_unverified = next;
    cp.records = records_from_stats(stats);
    if (options.on_checkpoint && options.checkpoint_interval) options.on_checkpoint(cp);
  }

  cp.records = records_from_stats(stats);
  VerifyResult out;
  out.stats = stats;
  out.checkpoint = cp;
  out.complete = cp.next_unverified > hi;
  if (options.on_checkpoint && !options.checkpoint_interval) options.on_checkpoint(cp);
  return out;
}

}  // namespace collatz

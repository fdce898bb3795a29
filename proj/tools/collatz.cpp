// collatz: one binary over the whole library. Machine-readable results on
// stdout (plain / csv / json per --format), logs on stderr. Exit codes:
// 0 ok, 2 usage, 3 unresolved orbit under the cap, 4 checkpoint error.
#include <CLI11.hpp>
#include <json.hpp>

#include "collatz/accel.hpp"
#include "collatz/analytics.hpp"
#include "collatz/codec.hpp"
#include "collatz/levelsets.hpp"
#include "collatz/nat.hpp"
#include "collatz/orbit.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace collatz;
using nlohmann::json;

namespace {

enum class Format { Plain, Csv, Json };

struct Common {
  Format format = Format::Plain;
  Steps cap = kDefaultCap;
  int window = kDefaultWindow;
  unsigned threads = 1;
  bool plot = false;
};

Nat parse_nat(const std::string& text) {
  if (text.empty()) throw CLI::ValidationError("empty integer");
  for (char ch : text)
    if (ch < '0' || ch > '9') throw CLI::ValidationError("not a natural number: " + text);
  return Nat(text);
}

std::uint64_t parse_u64(const std::string& text) {
  const Nat n = parse_nat(text);
  if (n > std::numeric_limits<std::uint64_t>::max())
    throw CLI::ValidationError("value too large: " + text);
  return n.convert_to<std::uint64_t>();
}

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format,-f", [&c](const std::vector<std::string>& vals) {
        const std::string& v = vals.front();
        if (v == "plain") c.format = Format::Plain;
        else if (v == "csv") c.format = Format::Csv;
        else if (v == "json") c.format = Format::Json;
        else return false;
        return true;
      },
      "output format: plain, csv or json")
      ->type_name("FMT")
      ->expected(1);
}

void add_cap(CLI::App* cmd, Common& c) {
  cmd->add_option("--cap", c.cap, "step budget before an orbit counts as unresolved")
      ->capture_default_str();
}

void add_window(CLI::App* cmd, Common& c) {
  cmd->add_option("--window,-w", c.window, "window width in steps (1..24)")
      ->check(CLI::Range(kMinWindow, kMaxWindow))
      ->capture_default_str();
}

void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads,-t", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
}

// ----- output helpers -----

std::string join(const std::vector<Nat>& xs, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i].str();
  }
  return out;
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

// single scalar result: plain prints the bare value, csv wraps it in a
// one-row table keyed by the input
void emit_scalar(const Common& c, const std::string& in_key, const std::string& in_val,
                 const std::string& out_key, const std::string& out_val, bool quote_json_out,
                 std::uint64_t out_num = 0) {
  switch (c.format) {
    case Format::Plain:
      std::cout << out_val << "\n";
      break;
    case Format::Csv:
      std::cout << in_key << "," << out_key << "\n" << in_val << "," << out_val << "\n";
      break;
    case Format::Json: {
      json j;
      j[in_key] = in_val;
      if (quote_json_out)
        j[out_key] = out_val;
      else
        j[out_key] = out_num;
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
}

// list of integers: plain joins with commas, csv gets one row per element
void emit_list(const Common& c, const std::string& obj_key, const std::string& obj_val,
               const std::string& elem_key, const std::vector<Nat>& xs) {
  switch (c.format) {
    case Format::Plain:
      std::cout << join(xs) << "\n";
      break;
    case Format::Csv:
      std::cout << "index," << elem_key << "\n";
      for (std::size_t i = 0; i < xs.size(); ++i)
        std::cout << i << "," << xs[i].str() << "\n";
      break;
    case Format::Json: {
      json j;
      j[obj_key] = obj_val;
      json arr = json::array();
      for (const Nat& x : xs) arr.push_back(x.str());
      j[elem_key] = arr;
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
}

// key/value report: plain prints "key: value" lines, csv a two-column table
void emit_report(const Common& c, const std::vector<std::pair<std::string, json>>& rows) {
  switch (c.format) {
    case Format::Plain:
      for (const auto& [k, v] : rows)
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      break;
    case Format::Csv:
      std::cout << "key,value\n";
      for (const auto& [k, v] : rows)
        std::cout << k << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      break;
    case Format::Json: {
      json j;
      for (const auto& [k, v] : rows) j[k] = v;
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
}

std::string render_map(int w, const WindowEntry& e) {
  // affine map in the style (9x+7)/8; x/8 when the window is all even steps
  std::string out;
  if (e.odd_count == 0) {
    out = "x/";
  } else {
    const Nat k = pow3(e.odd_count);
    out = "(" + (k == 1 ? std::string() : k.str()) + "x+" + std::to_string(e.offset) + ")/";
  }
  return out + pow2(w).str();
}

// ----- verify plumbing -----

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return std::nullopt;  // fresh start
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

void store_checkpoint(const std::string& path, const Checkpoint& cp) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) throw CheckpointError("cannot write checkpoint file: " + path);
  out << serialize_checkpoint(cp);
  out.flush();
  if (!out.good()) throw CheckpointError("short write on checkpoint file: " + path);
}

std::vector<std::pair<std::string, json>> verify_report(const VerifyResult& res, int window) {
  const VerifyStats& st = res.stats;
  return {
      {"range_lo", res.checkpoint.range_lo.str()},
      {"range_hi", res.checkpoint.range_hi.str()},
      {"window", window},
      {"complete", res.complete},
      {"next_unverified", res.checkpoint.next_unverified.str()},
      {"seeds_scanned", st.seeds_scanned.str()},
      {"non_descending", st.non_descending.str()},
      {"first_non_descending", st.first_non_descending.str()},
      {"unresolved_sigma", st.unresolved_sigma.str()},
      {"max_stopping", st.max_stopping},
      {"max_stopping_seed", st.max_stopping_seed.str()},
      {"max_sigma", st.max_sigma},
      {"max_sigma_seed", st.max_sigma_seed.str()},
      {"max_gamma_sigma", st.max_gamma_sigma},
      {"max_gamma_seed", st.max_gamma_seed.str()},
  };
}

// ----- the golden report -----

void reference_tables(const Common& c) {
  std::ostream& os = std::cout;

  os << "# total stopping times\n";
  os << "n,sigma\n";
  for (int n = 2; n <= 8; ++n) os << n << "," << *total_stopping_time(Nat(n)) << "\n";

  os << "\n# orbits\n";
  for (int n = 2; n <= 8; ++n) {
    const OrbitRecord rec = orbit(Nat(n));
    os << n << ": " << join(rec.values, ' ') << "\n";
  }

  os << "\n# level sets\n";
  const auto sets = level_sets_up_to(8);
  for (Steps k = 0; k <= 8; ++k) os << "S[" << k << "] = " << join(sets[k], ' ') << "\n";

  for (int w = 1; w <= 3; ++w) {
    os << "\n# window maps, w = " << w << "\n";
    const WindowTable t = build_window_table(w);
    for (std::size_t j = 0; j < t.entries.size(); ++j)
      os << "f[" << w << "," << j << "] = " << render_map(w, t.entries[j]) << "\n";
  }

  os << "\n# contraction maps for seed 11\n";
  const WindowTable t5 = build_window_table(5);
  for (std::uint64_t j : {10, 11})
    os << "f[5," << j << "] = " << render_map(5, t5.entries[j]) << "\n";

  os << "\n# tuple representations\n";
  for (Steps m = 4; m <= 8; ++m) {
    auto lam = enumerate_lambda(m);
    std::sort(lam.begin(), lam.end(), [](const auto& a, const auto& b) {
      if (a.second.l() != b.second.l()) return a.second.l() < b.second.l();
      return a.second.b < b.second.b;
    });
    os << "Lambda[" << m << "] =";
    for (const auto& [value, rep] : lam) {
      os << " (" << rep.l();
      for (Steps b : rep.b) os << "," << b;
      os << "," << rep.m << ")";
    }
    os << "\n";
  }

  os << "\n# curve parameters\n";
  os << "n,sigma,i,j\n";
  for (int n = 2; n <= 8; ++n) {
    const CurveParams cp = curve_params(Nat(n));
    os << n << "," << *total_stopping_time(Nat(n)) << "," << cp.odd_count << ","
       << cp.offset.str() << "\n";
  }

  os << "\n# parity codes\n";
  os << "n,tau\n";
  for (int n = 1; n <= 8; ++n) os << n << "," << tau(Nat(n)).str() << "\n";

  os << "\n# code image of the tuple sets\n";
  for (Steps m = 0; m <= 8; ++m)
    os << "tau(Lambda[" << m << "]) = " << join(tau_image_lambda(m), ' ') << "\n";

  os << "\n# leading offsets\n";
  os << "m,alpha1,alpha2\n";
  for (Steps m = 1; m <= 8; ++m) {
    const auto alphas = alpha_sequence(m);
    const Nat a1 = alphas.at(0);
    const Nat a2 = alphas.size() > 1 ? alphas.at(1) : Nat(0);
    os << m << "," << a1.str() << "," << a2.str() << "\n";
  }

  os << "\n# decoded integers\n";
  os << "n,phi\n";
  for (int n = 1; n <= 8; ++n) os << n << "," << to_string(phi(Nat(n))) << "\n";

  os << "\n# record seeds up to 10^6\n";
  os << "k,seed,gamma\n";
  const WindowTable table = build_window_table(c.window);
  const auto records = an_scan(1000000, table, c.threads, c.cap);
  for (std::size_t i = 0; i < records.size(); ++i)
    os << i + 1 << "," << records[i].seed.str() << "," << fixed(records[i].gamma, 2) << "\n";

  os << "\n# record candidates\n";
  os << "seed,gamma\n";
  const CandidateReport cand = candidate_check(default_candidate_seeds(), table, c.cap);
  for (const RecordEntry& e : cand.entries)
    os << e.seed.str() << "," << fixed(e.gamma, 2) << "\n";

  os << "\n# repeated stopping times\n";
  os << "m,zeta\n";
  const auto series = zeta_series(20, table, c.cap);
  for (std::uint64_t m = 2; m <= 20; ++m) os << m << "," << series[m] << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collatz orbit, level-set and codec toolkit"};
  app.require_subcommand(1);

  Common c;
  std::string arg1, arg2;
  std::string checkpoint_path;
  std::uint64_t interval = 0, stop_after = 0;
  std::string bound;
  std::vector<std::string> seed_args;

  // every subcommand gets --format; orbit-walking ones get --cap; windowed
  // ones get --window/--threads as relevant
  auto* cmd_orbit = app.add_subcommand("orbit", "orbit of a seed down to 1");
  cmd_orbit->add_option("n", arg1, "seed (>= 1)")->required();
  add_format(cmd_orbit, c); add_cap(cmd_orbit, c);

  auto* cmd_sigma = app.add_subcommand("sigma", "total stopping time");
  cmd_sigma->add_option("n", arg1, "seed (>= 1)")->required();
  add_format(cmd_sigma, c); add_cap(cmd_sigma, c);

  auto* cmd_stopping = app.add_subcommand("stopping", "first descent below the seed");
  cmd_stopping->add_option("n", arg1, "seed (>= 2)")->required();
  add_format(cmd_stopping, c); add_cap(cmd_stopping, c);

  auto* cmd_trace = app.add_subcommand("trace", "parity trace of the orbit");
  cmd_trace->add_option("n", arg1, "seed (>= 1)")->required();
  add_format(cmd_trace, c); add_cap(cmd_trace, c);

  auto* cmd_curve = app.add_subcommand("curve", "exponents (i,j) with 2^sigma = 3^i n + j");
  cmd_curve->add_option("n", arg1, "seed (>= 2)")->required();
  add_format(cmd_curve, c); add_cap(cmd_curve, c);

  auto* cmd_table = app.add_subcommand("table", "per-residue window maps");
  add_format(cmd_table, c); add_window(cmd_table, c);

  auto* cmd_asigma = app.add_subcommand("accel-sigma", "total stopping time via window jumps");
  cmd_asigma->add_option("n", arg1, "seed (>= 1)")->required();
  add_format(cmd_asigma, c); add_cap(cmd_asigma, c); add_window(cmd_asigma, c);

  auto* cmd_c4 = app.add_subcommand("c4", "first window with slope below one");
  cmd_c4->add_option("n", arg1, "seed (>= 2)")->required();
  add_format(cmd_c4, c); add_cap(cmd_c4, c);

  auto* cmd_verify = app.add_subcommand("verify", "descent scan over a seed range");
  cmd_verify->add_option("lo", arg1, "first seed (>= 2)")->required();
  cmd_verify->add_option("hi", arg2, "last seed")->required();
  add_format(cmd_verify, c); add_cap(cmd_verify, c); add_window(cmd_verify, c);
  add_threads(cmd_verify, c);
  cmd_verify->add_option("--checkpoint", checkpoint_path,
                         "state file; loaded when present, rewritten as the scan advances");
  cmd_verify->add_option("--interval", interval, "seeds between checkpoint writes");
  cmd_verify->add_option("--stop-after", stop_after, "process at most this many seeds, then stop");

  auto* cmd_sk = app.add_subcommand("sk", "level set: all seeds with the given stopping time");
  cmd_sk->add_option("k", arg1, "level")->required();
  cmd_sk->add_option("--bound", bound, "keep only elements <= bound");
  add_format(cmd_sk, c);

  auto* cmd_lambda = app.add_subcommand("lambda", "tuple-set values (enumeration route)");
  cmd_lambda->add_option("m", arg1, "level (<= 26)")->required();
  add_format(cmd_lambda, c);

  auto* cmd_equality = app.add_subcommand("equality", "check both tuple/level inclusions");
  cmd_equality->add_option("m", arg1, "level (<= 26)")->required();
  add_format(cmd_equality, c); add_cap(cmd_equality, c);

  auto* cmd_rep = app.add_subcommand("rep", "tuple representation (l,b...,m) of a seed");
  cmd_rep->add_option("n", arg1, "seed (>= 1)")->required();
  add_format(cmd_rep, c); add_cap(cmd_rep, c);

  auto* cmd_l1 = app.add_subcommand("l1", "closed-form members with one odd step");
  cmd_l1->add_option("m", arg1, "level (>= 4)")->required();
  add_format(cmd_l1, c);

  auto* cmd_l2 = app.add_subcommand("l2", "closed-form odd members with two odd steps");
  cmd_l2->add_option("m", arg1, "level (>= 5; not 6 or 8; even levels >= 10)")->required();
  add_format(cmd_l2, c);

  auto* cmd_tau = app.add_subcommand("tau", "parity trace packed into an integer");
  cmd_tau->add_option("n", arg1, "seed (>= 1)")->required();
  add_format(cmd_tau, c); add_cap(cmd_tau, c);

  auto* cmd_phi = app.add_subcommand("phi", "rational decoder inverting tau");
  cmd_phi->add_option("n", arg1, "code word (>= 1)")->required();
  add_format(cmd_phi, c);

  auto* cmd_alpha = app.add_subcommand("alpha", "code offsets above 2^m, descending");
  cmd_alpha->add_option("m", arg1, "level (<= 26)")->required();
  add_format(cmd_alpha, c); add_cap(cmd_alpha, c);

  auto* cmd_acheck = app.add_subcommand("alpha-check", "leading offsets vs floor formulas");
  cmd_acheck->add_option("m", arg1, "level (4..26)")->required();
  add_format(cmd_acheck, c);

  auto* cmd_pscheck = app.add_subcommand("phi-s-check",
                                         "decoded near-powers of two vs level-set elements");
  cmd_pscheck->add_option("m", arg1, "level (>= 4)")->required();
  add_format(cmd_pscheck, c);

  auto* cmd_gamma = app.add_subcommand("gamma", "scaled total stopping time sigma/ln n");
  cmd_gamma->add_option("n", arg1, "seed (>= 2)")->required();
  add_format(cmd_gamma, c); add_cap(cmd_gamma, c);

  auto* cmd_anscan = app.add_subcommand("an-scan", "running-maximum gamma records");
  cmd_anscan->add_option("limit", arg1, "scan 3..limit")->required();
  add_format(cmd_anscan, c); add_cap(cmd_anscan, c); add_window(cmd_anscan, c);
  add_threads(cmd_anscan, c);
  cmd_anscan->add_flag("--plot", c.plot, "two-column seed,gamma data");

  auto* cmd_zeta = app.add_subcommand("zeta", "count of adjacent seeds with equal sigma");
  cmd_zeta->add_option("m", arg1, "upper end (>= 2)")->required();
  add_format(cmd_zeta, c); add_cap(cmd_zeta, c); add_window(cmd_zeta, c);
  cmd_zeta->add_flag("--plot", c.plot, "two-column m,zeta data");

  auto* cmd_angle = app.add_subcommand("angle", "cosine between the orbit and its cyclic shift");
  cmd_angle->add_option("n", arg1, "seed (>= 2)")->required();
  add_format(cmd_angle, c); add_cap(cmd_angle, c);

  auto* cmd_growth = app.add_subcommand("growth", "level-set sizes and growth ratios");
  cmd_growth->add_option("K", arg1, "max level (<= 40)")->required();
  add_format(cmd_growth, c);
  cmd_growth->add_flag("--plot", c.plot, "two-column k,count data");

  auto* cmd_cand = app.add_subcommand("candidates", "gamma of the published candidate seeds");
  cmd_cand->add_option("--seed", seed_args, "replace the built-in list (repeatable)");
  add_format(cmd_cand, c); add_cap(cmd_cand, c); add_window(cmd_cand, c);

  auto* cmd_tables = app.add_subcommand("tables", "every reference table in one report");
  add_cap(cmd_tables, c); add_window(cmd_tables, c); add_threads(cmd_tables, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_orbit) {
      const OrbitRecord rec = orbit(parse_nat(arg1), c.cap);
      if (!rec.resolved()) throw UnresolvedError(rec.seed, c.cap);
      switch (c.format) {
        case Format::Plain: std::cout << join(rec.values) << "\n"; break;
        case Format::Csv:
          std::cout << "step,value\n";
          for (std::size_t i = 0; i < rec.values.size(); ++i)
            std::cout << i << "," << rec.values[i].str() << "\n";
          break;
        case Format::Json: {
          json j;
          j["seed"] = rec.seed.str();
          j["sigma"] = *rec.sigma;
          json vals = json::array();
          for (const Nat& v : rec.values) vals.push_back(v.str());
          j["values"] = vals;
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_sigma) {
      const Nat n = parse_nat(arg1);
      const auto s = total_stopping_time(n, c.cap);
      if (!s) throw UnresolvedError(n, c.cap);
      emit_scalar(c, "n", n.str(), "sigma", std::to_string(*s), false, *s);
    } else if (*cmd_stopping) {
      const Nat n = parse_nat(arg1);
      const auto s = stopping_time(n, c.cap);
      if (!s) throw UnresolvedError(n, c.cap);
      emit_scalar(c, "n", n.str(), "stopping", std::to_string(*s), false, *s);
    } else if (*cmd_trace) {
      const Nat n = parse_nat(arg1);
      const auto trace = parity_trace(n, c.cap);
      switch (c.format) {
        case Format::Plain: {
          std::string out;
          for (std::size_t i = 0; i < trace.size(); ++i) {
            if (i) out += ',';
            out += char('0' + trace[i]);
          }
          std::cout << out << "\n";
          break;
        }
        case Format::Csv:
          std::cout << "step,parity\n";
          for (std::size_t i = 0; i < trace.size(); ++i)
            std::cout << i << "," << int(trace[i]) << "\n";
          break;
        case Format::Json: {
          json j;
          j["n"] = n.str();
          j["trace"] = json::array();
          for (auto b : trace) j["trace"].push_back(int(b));
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_curve) {
      const Nat n = parse_nat(arg1);
      const CurveParams cp = curve_params(n, c.cap);
      switch (c.format) {
        case Format::Plain:
          std::cout << cp.odd_count << "," << cp.offset.str() << "\n";
          break;
        case Format::Csv:
          std::cout << "n,i,j\n" << n.str() << "," << cp.odd_count << "," << cp.offset.str()
                    << "\n";
          break;
        case Format::Json: {
          json j;
          j["n"] = n.str();
          j["i"] = cp.odd_count;
          j["j"] = cp.offset.str();
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_table) {
      const WindowTable t = build_window_table(c.window);
      switch (c.format) {
        case Format::Plain:
          for (std::size_t j = 0; j < t.entries.size(); ++j)
            std::cout << j << "," << int(t.entries[j].odd_count) << "," << t.entries[j].offset
                      << "\n";
          break;
        case Format::Csv:
          std::cout << "residue,odd_count,offset\n";
          for (std::size_t j = 0; j < t.entries.size(); ++j)
            std::cout << j << "," << int(t.entries[j].odd_count) << "," << t.entries[j].offset
                      << "\n";
          break;
        case Format::Json: {
          json j;
          j["width"] = t.width;
          j["entries"] = json::array();
          for (std::size_t r = 0; r < t.entries.size(); ++r) {
            json e;
            e["residue"] = r;
            e["odd_count"] = int(t.entries[r].odd_count);
            e["offset"] = t.entries[r].offset;
            j["entries"].push_back(e);
          }
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_asigma) {
      const Nat n = parse_nat(arg1);
      const WindowTable t = build_window_table(c.window);
      const auto s = accel_total_stopping_time(n, t, c.cap);
      if (!s) throw UnresolvedError(n, c.cap);
      emit_scalar(c, "n", n.str(), "sigma", std::to_string(*s), false, *s);
    } else if (*cmd_c4) {
      const Nat n = parse_nat(arg1);
      const auto w = c4_witness(n, c.cap);
      if (!w) throw UnresolvedError(n, c.cap);
      switch (c.format) {
        case Format::Plain:
          std::cout << w->window << "," << w->residue.str() << "\n";
          break;
        case Format::Csv:
          std::cout << "n,window,residue\n"
                    << n.str() << "," << w->window << "," << w->residue.str() << "\n";
          break;
        case Format::Json: {
          json j;
          j["n"] = n.str();
          j["window"] = w->window;
          j["residue"] = w->residue.str();
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_verify) {
      const Nat lo = parse_nat(arg1), hi = parse_nat(arg2);
      const WindowTable t = build_window_table(c.window);
      std::optional<Checkpoint> resume;
      if (!checkpoint_path.empty()) {
        resume = load_checkpoint(checkpoint_path);
        if (resume)
          std::cerr << "resuming from " << checkpoint_path << " at "
                    << resume->next_unverified.str() << "\n";
      }
      VerifyOptions opts;
      opts.cap = c.cap;
      opts.threads = c.threads;
      opts.checkpoint_interval = interval;
      opts.stop_after = stop_after;
      if (!checkpoint_path.empty())
        opts.on_checkpoint = [&](const Checkpoint& cp) { store_checkpoint(checkpoint_path, cp); };
      const VerifyResult res = verify_range(lo, hi, t, resume, opts);
      if (!checkpoint_path.empty()) store_checkpoint(checkpoint_path, res.checkpoint);
      emit_report(c, verify_report(res, c.window));
    } else if (*cmd_sk) {
      const Steps k = parse_u64(arg1);
      std::optional<Nat> b;
      if (!bound.empty()) b = parse_nat(bound);
      emit_list(c, "k", arg1, "values", level_set(k, b));
    } else if (*cmd_lambda) {
      emit_list(c, "m", arg1, "values", lambda_values(parse_u64(arg1)));
    } else if (*cmd_equality) {
      const EqualityVerdict v = check_equality(parse_u64(arg1), c.cap);
      emit_report(c, {{"m", v.m},
                      {"lambda_count", v.lambda_count},
                      {"level_set_count", v.level_set_count},
                      {"lambda_in_level_set", v.lambda_in_level_set},
                      {"level_set_in_lambda", v.level_set_in_lambda},
                      {"equal", v.equal()}});
    } else if (*cmd_rep) {
      const TupleRep rep = rep_from_orbit(parse_nat(arg1), c.cap);
      switch (c.format) {
        case Format::Plain: {
          std::cout << rep.l();
          for (Steps b : rep.b) std::cout << "," << b;
          std::cout << "," << rep.m << "\n";
          break;
        }
        case Format::Csv: {
          std::cout << "field,value\n";
          std::cout << "l," << rep.l() << "\n";
          for (std::size_t i = 0; i < rep.b.size(); ++i)
            std::cout << "b" << i + 1 << "," << rep.b[i] << "\n";
          std::cout << "m," << rep.m << "\n";
          break;
        }
        case Format::Json: {
          json j;
          j["l"] = rep.l();
          j["b"] = rep.b;
          j["m"] = rep.m;
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_l1) {
      emit_list(c, "m", arg1, "values", l1_members(parse_u64(arg1)));
    } else if (*cmd_l2) {
      emit_list(c, "m", arg1, "values", l2_odd_members(parse_u64(arg1)));
    } else if (*cmd_tau) {
      const Nat n = parse_nat(arg1);
      emit_scalar(c, "n", n.str(), "tau", tau(n, c.cap).str(), true);
    } else if (*cmd_phi) {
      const Nat n = parse_nat(arg1);
      emit_scalar(c, "n", n.str(), "phi", to_string(phi(n)), true);
    } else if (*cmd_alpha) {
      emit_list(c, "m", arg1, "alphas", alpha_sequence(parse_u64(arg1), c.cap));
    } else if (*cmd_acheck) {
      const AlphaFormulaVerdict v = check_alpha_formulas(parse_u64(arg1));
      emit_report(c, {{"m", v.m},
                      {"alpha1", v.alpha1.str()},
                      {"alpha1_formula", v.alpha1_formula.str()},
                      {"alpha1_matches", v.alpha1_matches},
                      {"alpha2", v.alpha2.str()},
                      {"alpha2_formula", v.alpha2_formula.str()},
                      {"alpha2_matches", v.alpha2_matches}});
    } else if (*cmd_pscheck) {
      const PhiCorrespondenceVerdict v = check_phi_s_correspondence(parse_u64(arg1));
      if (c.format == Format::Csv) {
        std::cout << "k,argument,phi,expected,matches\n";
        for (const auto& chk : v.checks)
          std::cout << chk.k << "," << chk.argument.str() << "," << to_string(chk.phi_value)
                    << "," << chk.expected.str() << "," << (chk.matches ? "true" : "false")
                    << "\n";
      } else if (c.format == Format::Json) {
        json j;
        j["m"] = v.m;
        j["all_match"] = v.all_match;
        j["checks"] = json::array();
        for (const auto& chk : v.checks) {
          json e;
          e["k"] = chk.k;
          e["argument"] = chk.argument.str();
          e["phi"] = to_string(chk.phi_value);
          e["expected"] = chk.expected.str();
          e["matches"] = chk.matches;
          j["checks"].push_back(e);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        emit_report(c, {{"m", v.m},
                        {"checks", v.checks.size()},
                        {"all_match", v.all_match}});
      }
    } else if (*cmd_gamma) {
      const Nat n = parse_nat(arg1);
      const double g = gamma(n, c.cap);
      switch (c.format) {
        case Format::Plain: std::cout << fixed(g, 6) << "\n"; break;
        case Format::Csv:
          std::cout << "n,gamma\n" << n.str() << "," << fixed(g, 6) << "\n";
          break;
        case Format::Json: {
          json j;
          j["n"] = n.str();
          j["gamma"] = g;
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_anscan) {
      const std::uint64_t limit = parse_u64(arg1);
      const WindowTable t = build_window_table(c.window);
      const auto records = an_scan(limit, t, c.threads, c.cap);
      if (c.plot) {
        std::cout << "seed,gamma\n";
        for (const auto& e : records)
          std::cout << e.seed.str() << "," << fixed(e.gamma, 4) << "\n";
      } else if (c.format == Format::Json) {
        json j;
        j["limit"] = limit;
        j["records"] = json::array();
        for (const auto& e : records) {
          json r;
          r["seed"] = e.seed.str();
          r["sigma"] = e.sigma;
          r["gamma"] = e.gamma;
          j["records"].push_back(r);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        if (c.format == Format::Csv) std::cout << "seed,sigma,gamma\n";
        for (const auto& e : records)
          std::cout << e.seed.str() << "," << e.sigma << "," << fixed(e.gamma, 4) << "\n";
      }
    } else if (*cmd_zeta) {
      const std::uint64_t m = parse_u64(arg1);
      const WindowTable t = build_window_table(c.window);
      if (c.plot) {
        const auto series = zeta_series(m, t, c.cap);
        std::cout << "m,zeta\n";
        for (std::uint64_t k = 2; k <= m; ++k) std::cout << k << "," << series[k] << "\n";
      } else {
        const Steps z = zeta(m, t, c.cap);
        std::cerr << "zeta(" << m << ")/" << m << " = "
                  << fixed(double(z) / double(m), 6) << "\n";
        emit_scalar(c, "m", std::to_string(m), "zeta", std::to_string(z), false, z);
      }
    } else if (*cmd_angle) {
      const Nat n = parse_nat(arg1);
      const AngleParts p = orbit_angle_exact(n, c.cap);
      const double cosv = p.dot.convert_to<double>() / p.norm2.convert_to<double>();
      switch (c.format) {
        case Format::Plain: std::cout << fixed(cosv, 12) << "\n"; break;
        case Format::Csv:
          std::cout << "n,dot,norm2,cos\n"
                    << n.str() << "," << p.dot.str() << "," << p.norm2.str() << ","
                    << fixed(cosv, 12) << "\n";
          break;
        case Format::Json: {
          json j;
          j["n"] = n.str();
          j["dot"] = p.dot.str();
          j["norm2"] = p.norm2.str();
          j["cos"] = cosv;
          std::cout << j.dump(2) << "\n";
          break;
        }
      }
    } else if (*cmd_growth) {
      const auto rows = level_set_growth(parse_u64(arg1));
      if (c.plot) {
        std::cout << "k,count\n";
        for (const auto& r : rows) std::cout << r.k << "," << r.count << "\n";
      } else if (c.format == Format::Json) {
        json j = json::array();
        for (const auto& r : rows) {
          json e;
          e["k"] = r.k;
          e["count"] = r.count;
          if (r.ratio) e["ratio"] = *r.ratio;
          j.push_back(e);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        if (c.format == Format::Csv) std::cout << "k,count,ratio\n";
        for (const auto& r : rows) {
          std::cout << r.k << "," << r.count << ",";
          if (r.ratio) std::cout << fixed(*r.ratio, 4);
          std::cout << "\n";
        }
      }
    } else if (*cmd_cand) {
      const WindowTable t = build_window_table(c.window);
      std::vector<Nat> seeds;
      for (const auto& s : seed_args) seeds.push_back(parse_nat(s));
      if (seeds.empty()) seeds = default_candidate_seeds();
      const CandidateReport report = candidate_check(seeds, t, c.cap);
      if (c.format == Format::Json) {
        json j;
        j["increasing"] = report.increasing;
        if (!report.increasing) j["first_decrease"] = report.first_decrease;
        j["entries"] = json::array();
        for (const auto& e : report.entries) {
          json r;
          r["seed"] = e.seed.str();
          r["sigma"] = e.sigma;
          r["gamma"] = e.gamma;
          j["entries"].push_back(r);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        if (c.format == Format::Csv) std::cout << "seed,sigma,gamma\n";
        for (const auto& e : report.entries)
          std::cout << e.seed.str() << "," << e.sigma << "," << fixed(e.gamma, 4) << "\n";
      }
    } else if (*cmd_tables) {
      reference_tables(c);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnresolvedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

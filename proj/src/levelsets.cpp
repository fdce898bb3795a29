#include "collatz/levelsets.hpp"

#include "collatz/orbit.hpp"

#include <algorithm>
#include <stdexcept>

namespace collatz {

// ----- tuple representation -----

bool tuple_valid(const TupleRep& rep) {
  if (rep.m <= 3) return rep.b.empty();
  if (rep.b.size() > rep.m - 3) return false;
  for (std::size_t i = 0; i < rep.b.size(); ++i) {
    if (rep.b[i] > rep.m - 4) return false;
    if (i > 0 && rep.b[i] <= rep.b[i - 1]) return false;
  }
  return true;
}

Rat tuple_value(const TupleRep& rep) {
  if (!tuple_valid(rep)) throw std::invalid_argument("tuple_value: invalid tuple");
  const Steps l = rep.l();
  // common denominator 3^l: (2^m - sum 2^{b_k} 3^{l-k}) / 3^l
  Nat num = pow2(rep.m);
  for (std::size_t k = 1; k <= l; ++k) num -= pow2(rep.b[k - 1]) * pow3(l - k);
  return Rat(num) / Rat(pow3(l));
}

// ----- brute-force enumeration -----

namespace {

using u128 = unsigned __int128;

struct LambdaEnum {
  Steps m;
  u128 pw2m;
  std::vector<u128> p3;  // 3^0..3^l for the current l
  std::vector<Steps> b;
  std::vector<std::pair<Nat, TupleRep>>* out;

  // choose b[depth..l-1] ascending from [min_b, m-4]; partial carries
  // sum 3^(l-k) 2^(b_k) over the chosen prefix
  void recurse(Steps l, Steps depth, Steps min_b, u128 partial) {
    if (depth == l) {
      const u128 num = pw2m - partial;
      if (num > 0 && num % p3[l] == 0) {
        const std::uint64_t value = static_cast<std::uint64_t>(num / p3[l]);
        out->push_back({Nat(value), TupleRep{b, m}});
      }
      return;
    }
    for (Steps pos = min_b; pos + (l - depth) <= m - 3; ++pos) {
      const u128 term = p3[l - depth - 1] * (u128{1} << pos);
      if (partial + term >= pw2m) break;  // later choices only grow the sum
      b[depth] = pos;
      recurse(l, depth + 1, pos + 1, partial + term);
    }
  }
};

}  // namespace

std::vector<std::pair<Nat, TupleRep>> enumerate_lambda(Steps m) {
  if (m > 26) throw std::invalid_argument("enumerate_lambda: m must be <= 26");
  std::vector<std::pair<Nat, TupleRep>> out;
  if (m <= 3) {
    out.push_back({pow2(m), TupleRep{{}, m}});
    return out;
  }
  LambdaEnum en;
  en.m = m;
  en.pw2m = u128{1} << m;
  en.out = &out;
  for (Steps l = 0; l <= m - 3; ++l) {
    en.p3.assign(l + 1, 1);
    for (Steps i = 1; i <= l; ++i) en.p3[i] = en.p3[i - 1] * 3;
    en.b.assign(l, 0);
    en.recurse(l, 0, 0, 0);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].first == out[i - 1].first)
      throw std::logic_error("enumerate_lambda: duplicate value");
  return out;
}

std::vector<Nat> lambda_values(Steps m) {
  std::vector<Nat> vs;
  for (const auto& [v, rep] : enumerate_lambda(m)) vs.push_back(v);
  return vs;
}

// ----- level sets by inverse BFS -----

std::vector<std::vector<Nat>> level_sets_up_to(Steps max_k) {
  std::vector<std::vector<Nat>> sets;
  sets.push_back({Nat(1)});
  for (Steps k = 1; k <= max_k; ++k) {
    std::vector<Nat> next;
    next.reserve(sets.back().size() * 2);
    for (const Nat& n : sets.back()) {
      next.push_back(2 * n);
      if (n % 3 == 2) {
        const Nat p = (2 * n - 1) / 3;  // always odd when integral
        if (p > 1) next.push_back(p);   // drop the 2 -> 1 revisit of the trivial cycle
      }
    }
    std::sort(next.begin(), next.end());
    sets.push_back(std::move(next));
  }
  return sets;
}

std::vector<Nat> level_set(Steps k, const std::optional<Nat>& bound) {
  std::vector<Nat> s = level_sets_up_to(k).back();
  if (bound) {
    std::vector<Nat> filtered;
    for (const Nat& n : s)
      if (n <= *bound) filtered.push_back(n);
    return filtered;
  }
  return s;
}

// ----- constructive representation -----

TupleRep rep_from_orbit(const Nat& s, Steps cap) {
  const std::vector<std::uint8_t> trace = parity_trace(s, cap);
  TupleRep rep;
  rep.m = trace.size() - 1;  // final 1 sits at position sigma
  for (Steps k = 0; k < rep.m; ++k)
    if (trace[k]) rep.b.push_back(k);
  if (!tuple_valid(rep)) throw std::logic_error("rep_from_orbit: invariant violation");
  return rep;
}

// ----- closed-form members -----

std::vector<Nat> l1_members(Steps m) {
  if (m < 4) throw std::invalid_argument("l1_members: m must be >= 4");
  std::vector<Nat> out;
  for (Steps b = m % 2; b + 4 <= m; b += 2) out.push_back((pow2(m) - pow2(b)) / 3);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Nat> l2_odd_members(Steps m) {
  if (m < 5 || m == 6 || m == 8 || (m % 2 == 0 && m < 10))
    throw std::invalid_argument("l2_odd_members: m must be >= 5, odd or >= 10, and not 6 or 8");
  // odd members force b_1 = 0; b_2 runs over its residue class inside
  // [1, m-4] (the stated upper index k <= (m-2)/6 would admit b_2 = 0 when
  // m == 2 (mod 6), which breaks integrality of the next division)
  std::vector<Nat> out;
  const Steps start = (m % 2 == 0) ? m - 8 : m - 4;  // largest admissible b_2
  for (Steps b2 = start; b2 >= 1; b2 -= 6) {
    out.push_back((pow2(m) - 3 - pow2(b2)) / 9);
    if (b2 < 7) break;  // Steps is unsigned
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ----- both inclusions, mechanically -----

EqualityVerdict check_equality(Steps m, Steps cap) {
  EqualityVerdict v;
  v.m = m;

  const auto lambda = enumerate_lambda(m);
  v.lambda_count = lambda.size();
  v.lambda_in_level_set = true;
  for (const auto& [value, rep] : lambda) {
    const auto sigma = total_stopping_time(value, cap);
    if (!sigma || *sigma != m) {
      v.lambda_in_level_set = false;
      v.lambda_failures.push_back(value);
    }
  }

  const std::vector<Nat> s = level_set(m);
  v.level_set_count = s.size();
  v.level_set_in_lambda = true;
  for (const Nat& n : s) {
    bool ok = false;
    try {
      const TupleRep rep = rep_from_orbit(n, cap);
      ok = rep.m == m && tuple_value(rep) == Rat(n);
    } catch (const UnresolvedError&) {
      ok = false;
    }
    if (!ok) {
      v.level_set_in_lambda = false;
      v.level_set_failures.push_back(n);
    }
  }
  return v;
}

}  // namespace collatz

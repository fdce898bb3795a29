#include "collatz/codec.hpp"

#include "collatz/levelsets.hpp"
#include "collatz/orbit.hpp"

#include <algorithm>
#include <stdexcept>

namespace collatz {

Nat tau(const Nat& n, Steps cap) {
  const std::vector<std::uint8_t> trace = parity_trace(n, cap);
  Nat packed = 0;
  for (std::size_t k = 0; k < trace.size(); ++k)
    if (trace[k]) boost::multiprecision::bit_set(packed, k);
  return packed;
}

Rat phi(const Nat& n) {
  if (n < 1) throw std::invalid_argument("phi: n must be >= 1");
  if (n == 1) return Rat(1);
  const Steps m = boost::multiprecision::msb(n);
  // ones among the low bits; the leading bit is the edge of the code word,
  // not part of the sum
  Steps L = 0;
  for (Steps k = 0; k < m; ++k)
    if (boost::multiprecision::bit_test(n, k)) ++L;
  // over the common denominator 3^L:
  // phi = (2^m - sum_{set k < m} 2^k 3^{L - Phi(k)}) / 3^L
  Nat num = pow2(m);
  Steps ones = 0;
  for (Steps k = 0; k < m; ++k) {
    if (!boost::multiprecision::bit_test(n, k)) continue;
    ++ones;
    num -= pow2(k) * pow3(L - ones);
  }
  return Rat(num) / Rat(pow3(L));
}

std::vector<Nat> tau_image_lambda(Steps m, Steps cap) {
  std::vector<Nat> taus;
  for (const Nat& v : lambda_values(m)) taus.push_back(tau(v, cap));
  std::sort(taus.begin(), taus.end());
  return taus;
}

std::vector<Nat> alpha_sequence(Steps m, Steps cap) {
  const std::vector<Nat> taus = tau_image_lambda(m, cap);
  const Nat base = pow2(m);
  std::vector<Nat> alphas;
  for (auto it = taus.rbegin(); it != taus.rend(); ++it) alphas.push_back(*it - base);
  return alphas;
}

AlphaFormulaVerdict check_alpha_formulas(Steps m) {
  if (m < 4 || m > 26)
    throw std::invalid_argument("check_alpha_formulas: m must be in [4, 26]");
  const std::vector<Nat> alphas = alpha_sequence(m);
  AlphaFormulaVerdict v;
  v.m = m;
  v.alpha1 = alphas.at(0);
  v.alpha2 = alphas.at(1);
  v.alpha1_formula = (Nat(3) << m) >> 5;     // floor(3 * 2^(m-5)), exact
  v.alpha2_formula = (Nat(605) << m) >> 13;  // floor(605 * 2^(m-13)), exact
  v.alpha1_matches = v.alpha1 == v.alpha1_formula;
  v.alpha2_matches = v.alpha2 == v.alpha2_formula;
  return v;
}

PhiCorrespondenceVerdict check_phi_s_correspondence(Steps m) {
  if (m < 4) throw std::invalid_argument("check_phi_s_correspondence: m must be >= 4");
  const std::vector<Nat> s = level_set(m);  // ascending; s_1 = 2^m is s.back()
  PhiCorrespondenceVerdict verdict;
  verdict.m = m;
  verdict.all_match = true;
  const Steps count = (m % 2 == 0) ? (m - 4) / 2 + 1 : (m - 5) / 2 + 1;
  for (Steps k = 0; k < count; ++k) {
    PhiCorrespondenceCheck chk;
    chk.k = k;
    const Steps bit = (m % 2 == 0) ? 2 * k : 2 * k + 1;
    chk.argument = pow2(m) + pow2(bit);
    chk.phi_value = phi(chk.argument);
    // s_{k+2} in descending order is the (k+2)-th largest element
    if (k + 2 <= s.size()) {
      chk.expected = s[s.size() - (k + 2)];
      chk.matches = chk.phi_value == Rat(chk.expected);
    } else {
      chk.matches = false;
    }
    if (!chk.matches) verdict.all_match = false;
    verdict.checks.push_back(std::move(chk));
  }
  return verdict;
}

}  // namespace collatz

#pragma once

#include "collatz/nat.hpp"

#include <vector>

namespace collatz {

// Parity trace of n packed into an integer, least significant bit first:
// tau(n) = sum theta_k 2^k over k = 0..sigma. The highest set bit sits at
// position sigma(n). Throws UnresolvedError when the orbit does not resolve.
Nat tau(const Nat& n, Steps cap = kDefaultCap);

// Inverse direction: reads n as a bit string with leading bit at position m
// (excluded from the sum) and decodes
//   phi(n) = 2^m/3^{Phi(m-1)} - sum_{k<m} 2^k beta_k / 3^{Phi(k)},
// where beta are the low bits and Phi counts ones among beta_0..beta_k.
// Exact rational; phi(1) = 1; phi(tau(n)) == n for every resolved n.
Rat phi(const Nat& n);

// tau over the members of Lambda_m, ascending.
std::vector<Nat> tau_image_lambda(Steps m, Steps cap = kDefaultCap);

// Offsets of tau(Lambda_m) above 2^m, ordered descending; the last entry is
// always 0 (contributed by 2^m itself).
std::vector<Nat> alpha_sequence(Steps m, Steps cap = kDefaultCap);

// Conjectured floor formulas for the two largest offsets, checked against
// the enumerated sequence. These are numerically supported claims, not
// theorems: the verdict reports mismatches instead of asserting.
struct AlphaFormulaVerdict {
  Steps m = 0;
  Nat alpha1;
  Nat alpha1_formula;  // floor(3 * 2^(m-5))
  bool alpha1_matches = false;
  Nat alpha2;
  Nat alpha2_formula;  // floor(605 * 2^(m-13))
  bool alpha2_matches = false;
};

// 4 <= m <= 26.
AlphaFormulaVerdict check_alpha_formulas(Steps m);

// Conjectured correspondence between phi on near-powers of two and the
// descending level-set elements: phi(2^m + 2^{2k}) == s_{k+2} for even m
// (odd exponents 2k+1 for odd m). Verdict only, one row per k.
struct PhiCorrespondenceCheck {
  Steps k = 0;
  Nat argument;
  Rat phi_value;
  Nat expected;
  bool matches = false;
};

struct PhiCorrespondenceVerdict {
  Steps m = 0;
  bool all_match = false;
  std::vector<PhiCorrespondenceCheck> checks;
};

// m >= 4.
PhiCorrespondenceVerdict check_phi_s_correspondence(Steps m);

}  // namespace collatz

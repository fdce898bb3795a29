#include "collatz/nat.hpp"

#include <algorithm>
#include <cmath>

namespace collatz {

Nat pow3(Steps k) {
  Nat p = 1;
  for (Steps i = 0; i < k; ++i) p *= 3;
  return p;
}

bool gamma_greater(Steps sigma_a, const Nat& a, Steps sigma_b, const Nat& b) {
  const double la = std::log(a.convert_to<double>());
  const double lb = std::log(b.convert_to<double>());
  const double ga = static_cast<double>(sigma_a) / la;
  const double gb = static_cast<double>(sigma_b) / lb;
  const double margin = 1e-9 * std::max(ga, gb);
  if (ga > gb + margin) return true;
  if (ga < gb - margin) return false;
  // too close for doubles: sigma_a/ln a > sigma_b/ln b  <=>  b^sigma_a > a^sigma_b
  return boost::multiprecision::pow(b, static_cast<unsigned>(sigma_a)) >
         boost::multiprecision::pow(a, static_cast<unsigned>(sigma_b));
}

std::string to_string(const Rat& r) {
  const Nat num = boost::multiprecision::numerator(r);
  const Nat den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace collatz

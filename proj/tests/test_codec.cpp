#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatz/codec.hpp"
#include "collatz/levelsets.hpp"
#include "collatz/orbit.hpp"

#include <vector>

using namespace collatz;

namespace {

std::vector<Nat> nats(std::initializer_list<long long> xs) {
  std::vector<Nat> out;
  for (long long x : xs) out.push_back(Nat(x));
  return out;
}

}  // namespace

TEST_CASE("parity codes of small seeds") {
  const long long expected[] = {1, 2, 35, 4, 17, 70, 2199, 8};  // n = 1..8
  for (int n = 1; n <= 8; ++n) CHECK(tau(Nat(n)) == expected[n - 1]);
  CHECK_THROWS_AS(tau(Nat(27), 10), UnresolvedError);
}

TEST_CASE("the code word ends at the total stopping time") {
  for (long long n = 1; n <= 4000; ++n) {
    const Nat code = tau(Nat(n));
    CHECK(boost::multiprecision::msb(code) == *total_stopping_time(Nat(n)));
  }
}

TEST_CASE("decoding small arguments") {
  CHECK(phi(Nat(1)) == Rat(1));
  CHECK(phi(Nat(2)) == Rat(2));
  CHECK(phi(Nat(3)) == Rat(1, 3));
  CHECK(phi(Nat(4)) == Rat(4));
  CHECK(phi(Nat(5)) == Rat(1));
  CHECK(phi(Nat(6)) == Rat(2, 3));
  CHECK(phi(Nat(7)) == Rat(-1, 9));
  CHECK(phi(Nat(8)) == Rat(8));
  CHECK_THROWS_AS(phi(Nat(0)), std::invalid_argument);
}

TEST_CASE("decoding inverts the code") {
  for (long long n = 1; n <= 4000; ++n) CHECK(phi(tau(Nat(n))) == Rat(n));
  CHECK(phi(tau(Nat(27))) == Rat(27));
  CHECK(phi(tau(Nat(837799))) == Rat(837799));
}

TEST_CASE("code image of the level sets, two routes") {
  // route 1: tau over the enumerated members; route 2: pack the tuple bits
  // directly (b positions plus the top bit at m)
  for (Steps m = 0; m <= 14; ++m) {
    std::vector<Nat> packed;
    for (const auto& [value, rep] : enumerate_lambda(m)) {
      Nat code = pow2(rep.m);
      for (Steps b : rep.b) code += pow2(b);
      packed.push_back(code);
    }
    std::sort(packed.begin(), packed.end());
    CHECK(tau_image_lambda(m) == packed);
  }
  CHECK(tau_image_lambda(4) == nats({16, 17}));
  CHECK(tau_image_lambda(5) == nats({32, 34, 35}));
  CHECK(tau_image_lambda(6) == nats({64, 65, 68, 70}));
}

TEST_CASE("offset sequences above the power of two") {
  CHECK(alpha_sequence(4) == nats({1, 0}));
  CHECK(alpha_sequence(5) == nats({3, 2, 0}));
  CHECK(alpha_sequence(6) == nats({6, 4, 1, 0}));
  CHECK(alpha_sequence(7) == nats({12, 9, 8, 2, 0}));
  CHECK(alpha_sequence(8) == nats({24, 18, 16, 4, 1, 0}));

  for (Steps m = 0; m <= 16; ++m) {
    const auto alphas = alpha_sequence(m);
    REQUIRE(!alphas.empty());
    CHECK(alphas.back() == 0);  // 2^m itself is always a member
    for (std::size_t i = 1; i < alphas.size(); ++i) REQUIRE(alphas[i - 1] > alphas[i]);
  }
}

TEST_CASE("leading offset formulas") {
  for (Steps m = 4; m <= 22; ++m) {
    const AlphaFormulaVerdict v = check_alpha_formulas(m);
    CHECK(v.alpha1_matches);
    CHECK(v.alpha1_formula == (Nat(3) << m) >> 5);
    if (m >= 5) {
      CHECK(v.alpha2_matches);
    } else {
      // the second formula starts holding at m = 5: at m = 4 the sequence
      // has offsets {1, 0} while the floor evaluates to 1
      CHECK(!v.alpha2_matches);
      CHECK(v.alpha2 == 0);
      CHECK(v.alpha2_formula == 1);
    }
  }
  CHECK(check_alpha_formulas(13).alpha2 == 605);
  CHECK_THROWS_AS(check_alpha_formulas(3), std::invalid_argument);
  CHECK_THROWS_AS(check_alpha_formulas(27), std::invalid_argument);
}

TEST_CASE("decoded near-powers of two walk down the level set") {
  for (Steps m = 4; m <= 20; ++m) {
    const PhiCorrespondenceVerdict v = check_phi_s_correspondence(m);
    CHECK(v.all_match);
    const Steps expect_count = (m % 2 == 0) ? (m - 4) / 2 + 1 : (m - 5) / 2 + 1;
    CHECK(v.checks.size() == expect_count);
    for (const auto& chk : v.checks) REQUIRE(chk.matches);
  }
  CHECK_THROWS_AS(check_phi_s_correspondence(3), std::invalid_argument);

  // spot check the first few rows at m = 8: phi(2^8 + 2^(2k)) descends
  // through the sorted fiber from its second-largest element
  const PhiCorrespondenceVerdict v8 = check_phi_s_correspondence(8);
  REQUIRE(v8.checks.size() == 3);
  CHECK(v8.checks[0].argument == 257);
  CHECK(v8.checks[0].expected == 85);
  CHECK(v8.checks[1].argument == 260);
  CHECK(v8.checks[1].expected == 84);
  CHECK(v8.checks[2].argument == 272);
  CHECK(v8.checks[2].expected == 80);
}

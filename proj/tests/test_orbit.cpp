#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatz/orbit.hpp"

#include <random>
#include <vector>

using namespace collatz;

namespace {

std::vector<Nat> nats(std::initializer_list<long long> xs) {
  std::vector<Nat> out;
  for (long long x : xs) out.push_back(Nat(x));
  return out;
}

}  // namespace

TEST_CASE("single step") {
  CHECK(step(Nat(3)) == 5);
  CHECK(step(Nat(7)) == 11);
  CHECK(step(Nat(8)) == 4);
  CHECK(step(Nat(1)) == 2);
  CHECK(step(Nat(2)) == 1);
  CHECK_THROWS_AS(step(Nat(0)), std::invalid_argument);
}

TEST_CASE("closed-form step agrees with the integer route") {
  CHECK(step_trig(Nat(3)) == 5);
  CHECK(step_trig(Nat(8)) == 4);
  for (long long n = 1; n <= 5000; ++n) CHECK(step_trig(Nat(n)) == step(Nat(n)));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Nat n = Nat(rng()) * Nat(rng()) + 1;  // well past 64 bits
    CHECK(step_trig(n) == step(n));
  }
  CHECK_THROWS_AS(step_trig(Nat(0)), std::invalid_argument);
}

TEST_CASE("orbits") {
  const OrbitRecord r7 = orbit(Nat(7));
  CHECK(r7.resolved());
  CHECK(r7.sigma == Steps{11});
  CHECK(r7.values == nats({7, 11, 17, 26, 13, 20, 10, 5, 8, 4, 2, 1}));

  const OrbitRecord r6 = orbit(Nat(6));
  CHECK(r6.sigma == Steps{6});
  CHECK(r6.values == nats({6, 3, 5, 8, 4, 2, 1}));

  const OrbitRecord r1 = orbit(Nat(1));
  CHECK(r1.sigma == Steps{0});
  CHECK(r1.values == nats({1}));

  const OrbitRecord r3 = orbit(Nat(3));
  CHECK(r3.values == nats({3, 5, 8, 4, 2, 1}));
}

TEST_CASE("orbit internal consistency and forced tail") {
  for (long long n = 1; n <= 3000; ++n) {
    const OrbitRecord rec = orbit(Nat(n));
    REQUIRE(rec.resolved());
    for (std::size_t k = 0; k + 1 < rec.values.size(); ++k)
      REQUIRE(rec.values[k + 1] == step(rec.values[k]));
    for (std::size_t k = 0; k < rec.values.size(); ++k)
      REQUIRE(int(rec.parities[k]) == (is_odd(rec.values[k]) ? 1 : 0));
    if (*rec.sigma >= 3) {
      const auto sz = rec.values.size();
      CHECK(rec.values[sz - 4] == 8);
      CHECK(rec.values[sz - 3] == 4);
      CHECK(rec.values[sz - 2] == 2);
      CHECK(rec.values[sz - 1] == 1);
    }
  }
}

TEST_CASE("orbit respects its cap") {
  const OrbitRecord rec = orbit(Nat(27), 10);
  CHECK(!rec.resolved());
  CHECK(rec.cap == 10);
  CHECK(rec.values.size() == 11);
  const OrbitRecord zero = orbit(Nat(5), 0);
  CHECK(!zero.resolved());
  CHECK(zero.values == nats({5}));
}

TEST_CASE("total stopping time") {
  const Steps expected[] = {1, 5, 2, 4, 6, 11, 3};  // n = 2..8
  for (int n = 2; n <= 8; ++n) CHECK(total_stopping_time(Nat(n)) == expected[n - 2]);
  CHECK(total_stopping_time(Nat(1)) == Steps{0});
  CHECK(total_stopping_time(Nat(16)) == Steps{4});
  CHECK(total_stopping_time(Nat(27)) == Steps{70});
  CHECK(!total_stopping_time(Nat(27), 69).has_value());
  CHECK(total_stopping_time(Nat(27), 70) == Steps{70});
}

TEST_CASE("stopping time") {
  CHECK(stopping_time(Nat(3)) == Steps{4});
  CHECK(stopping_time(Nat(7)) == Steps{7});
  for (long long n = 2; n <= 2000; n += 2) REQUIRE(stopping_time(Nat(n)) == Steps{1});
  CHECK(!stopping_time(Nat(27), 3).has_value());
  CHECK_THROWS_AS(stopping_time(Nat(1)), std::invalid_argument);
}

TEST_CASE("parity traces") {
  CHECK(parity_trace(Nat(3)) == std::vector<std::uint8_t>{1, 1, 0, 0, 0, 1});
  CHECK(parity_trace(Nat(4)) == std::vector<std::uint8_t>{0, 0, 1});
  CHECK(parity_trace(Nat(7)) == std::vector<std::uint8_t>{1, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1});
  CHECK(parity_trace(Nat(1)) == std::vector<std::uint8_t>{1});
  CHECK_THROWS_AS(parity_trace(Nat(27), 10), UnresolvedError);
}

TEST_CASE("curve parameters") {
  const std::pair<Steps, long long> expected[] = {
      {0, 0}, {2, 5}, {0, 0}, {1, 1}, {2, 10}, {5, 347}, {0, 0}};  // n = 2..8
  for (int n = 2; n <= 8; ++n) {
    const CurveParams cp = curve_params(Nat(n));
    CHECK(cp.odd_count == expected[n - 2].first);
    CHECK(cp.offset == expected[n - 2].second);
  }
  CHECK_THROWS_AS(curve_params(Nat(1)), std::invalid_argument);
  CHECK_THROWS_AS(curve_params(Nat(27), 10), UnresolvedError);
}

TEST_CASE("curve identity and trace weight") {
  for (long long n = 2; n <= 5000; ++n) {
    const CurveParams cp = curve_params(Nat(n));
    const Steps sigma = *total_stopping_time(Nat(n));
    REQUIRE(pow2(sigma) == pow3(cp.odd_count) * n + cp.offset);
    // the parity trace carries odd_count ones plus the final 1
    const auto trace = parity_trace(Nat(n));
    Steps ones = 0;
    for (auto b : trace) ones += b;
    REQUIRE(ones == cp.odd_count + 1);
  }
}

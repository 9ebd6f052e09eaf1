#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "quadsq/arith.hpp"

using namespace quadsq;
using namespace quadsq::arith;

TEST_CASE("mod_pow matches repeated multiplication", "[arith]") {
  REQUIRE(mod_pow(2, 10, 1000) == 24);
  REQUIRE(mod_pow(-3, 3, 7) == mod_floor(Int(-27), Int(7)));
  REQUIRE(mod_pow(5, 0, 7) == 1);
  REQUIRE(mod_pow(5, 3, 1) == 0);
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 200; ++it) {
    long long b = static_cast<long long>(rng() % 2001) - 1000;
    unsigned e = static_cast<unsigned>(rng() % 40);
    long long n = 1 + static_cast<long long>(rng() % 997);
    Int expect = 1;
    for (unsigned i = 0; i < e; ++i) expect = mod_floor(expect * b, Int(n));
    REQUIRE(mod_pow(b, e, n) == expect);
  }
  REQUIRE_THROWS_AS(mod_pow(2, -1, 7), DomainError);
  REQUIRE_THROWS_AS(mod_pow(2, 3, 0), DomainError);
}

TEST_CASE("mod_inverse inverts", "[arith]") {
  REQUIRE(mod_inverse(3, 7) == 5);
  REQUIRE(mod_floor(Int(3) * mod_inverse(3, 1000003), Int(1000003)) == 1);
  REQUIRE_THROWS_AS(mod_inverse(6, 9), DomainError);
}

TEST_CASE("is_prime on known values", "[arith]") {
  std::vector<long long> primes = {2, 3, 5, 7, 97, 1009, 104729, 2147483647LL};
  for (long long p : primes) REQUIRE(is_prime(Int(p)));
  std::vector<long long> comps = {0, 1, 4, 9, 91, 1001, 104730, 6700417LL * 3};
  for (long long c : comps) REQUIRE_FALSE(is_prime(Int(c)));
  // Strong pseudoprime to several bases.
  REQUIRE_FALSE(is_prime(Int("3215031751")));
  REQUIRE(is_prime(Int("170141183460469231731687303715884105727")));  // 2^127-1
  REQUIRE(is_prime(Int(-7)));  // primality of the absolute value
}

TEST_CASE("is_prime agrees with sieve below 20000", "[arith]") {
  auto ps = primes_below(20000);
  std::vector<bool> mark(20000, false);
  for (long long p : ps) mark[static_cast<size_t>(p)] = true;
  for (long long n = 0; n < 20000; ++n)
    REQUIRE(is_prime(Int(n)) == mark[static_cast<size_t>(n)]);
}

TEST_CASE("factorize pins", "[arith]") {
  auto f0 = factorize(0);
  REQUIRE(f0.sign == 0);
  REQUIRE(f0.factors.empty());

  auto f1 = factorize(1);
  REQUIRE(f1.sign == 1);
  REQUIRE(f1.factors.empty());

  auto fm12 = factorize(-12);
  REQUIRE(fm12.sign == -1);
  REQUIRE(fm12.factors ==
          std::vector<std::pair<Int, unsigned>>{{2, 2}, {3, 1}});

  auto fbig = factorize(Int("600851475143"));
  REQUIRE(fbig.factors == std::vector<std::pair<Int, unsigned>>{
                              {71, 1}, {839, 1}, {1471, 1}, {6857, 1}});
}

TEST_CASE("factorize round-trips and yields primes", "[arith]") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 120; ++it) {
    Int n = Int(rng() % 1000000000ULL) * Int(rng() % 1000000ULL) + 1;
    if (it % 3 == 0) n = -n;
    auto f = factorize(n);
    Int back = f.sign;
    for (const auto& [p, e] : f.factors) {
      REQUIRE(is_prime(p));
      for (unsigned i = 0; i < e; ++i) back *= p;
    }
    REQUIRE(back == n);
    for (size_t i = 1; i < f.factors.size(); ++i)
      REQUIRE(f.factors[i - 1].first < f.factors[i].first);
  }
}

TEST_CASE("jacobi pins and domain", "[arith]") {
  REQUIRE(jacobi(2, 15) == 1);
  REQUIRE(jacobi(2, 7) == 1);
  REQUIRE(jacobi(2, 5) == -1);
  REQUIRE(jacobi(-1, 5) == 1);
  REQUIRE(jacobi(-1, 7) == -1);
  REQUIRE(jacobi(5, 5) == 0);
  REQUIRE(jacobi(12, 9) == 0);
  REQUIRE(jacobi(1, 1) == 1);
  REQUIRE_THROWS_AS(jacobi(3, 8), DomainError);
  REQUIRE_THROWS_AS(jacobi(3, 0), DomainError);
  REQUIRE_THROWS_AS(jacobi(3, -5), DomainError);
}

TEST_CASE("jacobi equals Euler criterion for odd primes", "[arith]") {
  for (long long p : primes_below(500)) {
    if (p == 2) continue;
    for (long long a = -30; a <= 30; ++a) {
      Int e = mod_pow(a, (Int(p) - 1) / 2, p);
      int euler = e == 0 ? 0 : (e == 1 ? 1 : -1);
      REQUIRE(jacobi(a, p) == euler);
    }
  }
}

TEST_CASE("jacobi is multiplicative in both arguments", "[arith]") {
  // Top argument: tables per modulus make this an O(1) lookup per pair.
  for (long long n = 1; n <= 201; n += 2) {
    std::vector<int> table(static_cast<size_t>(n));
    for (long long r = 0; r < n; ++r)
      table[static_cast<size_t>(r)] = jacobi(r, n);
    for (long long a = -60; a <= 60; ++a)
      for (long long b = -60; b <= 60; ++b) {
        int lhs = table[static_cast<size_t>(mod_floor_ll(a * b, n))];
        int rhs = table[static_cast<size_t>(mod_floor_ll(a, n))] *
                  table[static_cast<size_t>(mod_floor_ll(b, n))];
        REQUIRE(lhs == rhs);
      }
  }
  // Bottom argument.
  for (long long n1 = 1; n1 <= 45; n1 += 2)
    for (long long n2 = 1; n2 <= 45; n2 += 2)
      for (long long a = -20; a <= 20; ++a)
        REQUIRE(jacobi(a, n1 * n2) == jacobi(a, n1) * jacobi(a, n2));
}

TEST_CASE("quartic2 pins and domain", "[arith]") {
  REQUIRE(quartic2(73) == 1);    // 73 = 3^2 + 64
  REQUIRE(quartic2(89) == 1);    // 89 = 5^2 + 64
  REQUIRE(quartic2(17) == -1);
  REQUIRE(quartic2(41) == -1);
  REQUIRE_THROWS_AS(quartic2(7), DomainError);   // 7 != 1 mod 8
  REQUIRE_THROWS_AS(quartic2(13), DomainError);  // 13 != 1 mod 8
  REQUIRE_THROWS_AS(quartic2(9), DomainError);   // not prime
}

TEST_CASE("quartic2 matches a^2 + 64 b^2 representability", "[arith]") {
  for (long long p : primes_below(1000)) {
    if (p % 8 != 1) continue;
    bool representable = false;
    for (long long b = 1; 64 * b * b < p && !representable; ++b) {
      long long rest = p - 64 * b * b;
      long long r = static_cast<long long>(std::sqrt(static_cast<double>(rest)));
      for (long long a = std::max(0LL, r - 2); a <= r + 2; ++a)
        if (a * a == rest) representable = true;
    }
    REQUIRE(quartic2(p) == (representable ? 1 : -1));
  }
}

TEST_CASE("isqrt and is_square", "[arith]") {
  REQUIRE(isqrt(Int(0)) == 0);
  REQUIRE(isqrt(Int(35)) == 5);
  REQUIRE(isqrt(Int(36)) == 6);
  REQUIRE(is_square(Int(0)));
  REQUIRE(is_square(Int("1000000000000000000000000000000000000")));
  REQUIRE_FALSE(is_square(Int(-4)));
  REQUIRE_FALSE(is_square(Int(35)));
  REQUIRE_THROWS_AS(isqrt(Int(-1)), DomainError);
}

TEST_CASE("ord_at", "[arith]") {
  REQUIRE(ord_at(Int(48), Int(2)) == 4);
  REQUIRE(ord_at(Int(-27), Int(3)) == 3);
  REQUIRE(ord_at(Int(5), Int(3)) == 0);
  REQUIRE_THROWS_AS(ord_at(Int(0), Int(2)), DomainError);
}

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "quadsq/pell.hpp"

using namespace quadsq;
using namespace quadsq::pell;

namespace {

bool squarefree_ll(long long n) {
  for (long long k = 2; k * k <= n; ++k)
    if (n % (k * k) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("cf_sqrt pins", "[pell]") {
  auto c2 = cf_sqrt(2);
  REQUIRE(c2.a0 == 1);
  REQUIRE(c2.period == std::vector<Int>{2});

  auto c3 = cf_sqrt(3);
  REQUIRE(c3.a0 == 1);
  REQUIRE(c3.period == std::vector<Int>{1, 2});

  auto c6 = cf_sqrt(6);
  REQUIRE(c6.a0 == 2);
  REQUIRE(c6.period == std::vector<Int>{2, 4});

  auto c19 = cf_sqrt(19);
  REQUIRE(c19.a0 == 4);
  REQUIRE(c19.period == std::vector<Int>{2, 1, 3, 1, 2, 8});

  REQUIRE_THROWS_AS(cf_sqrt(4), DomainError);
  REQUIRE_THROWS_AS(cf_sqrt(1), DomainError);
  REQUIRE_THROWS_AS(cf_sqrt(0), DomainError);
  REQUIRE_THROWS_AS(cf_sqrt(-6), DomainError);
}

TEST_CASE("cf_sqrt period ends at 2*a0 and is palindromic up to the last term",
          "[pell]") {
  for (long long D = 2; D <= 200; ++D) {
    Int r = arith::isqrt(Int(D));
    if (r * r == D) continue;
    auto cf = cf_sqrt(D);
    REQUIRE(cf.period.back() == 2 * cf.a0);
    size_t n = cf.period.size();
    for (size_t i = 0; i + 1 < n; ++i)
      REQUIRE(cf.period[i] == cf.period[n - 2 - i]);
  }
}

TEST_CASE("fundamental_unit pins", "[pell]") {
  auto u2 = fundamental_unit(2);
  REQUIRE(u2.eps.a == 1);
  REQUIRE(u2.eps.b == 1);
  REQUIRE(u2.unit_norm == -1);

  auto u3 = fundamental_unit(3);
  REQUIRE(u3.eps.a == 2);
  REQUIRE(u3.eps.b == 1);
  REQUIRE(u3.unit_norm == 1);

  auto u6 = fundamental_unit(6);
  REQUIRE(u6.eps.a == 5);
  REQUIRE(u6.eps.b == 2);
  REQUIRE(u6.unit_norm == 1);

  auto u10 = fundamental_unit(10);
  REQUIRE(u10.eps.a == 3);
  REQUIRE(u10.eps.b == 1);
  REQUIRE(u10.unit_norm == -1);

  auto u19 = fundamental_unit(19);
  REQUIRE(u19.eps.a == 170);
  REQUIRE(u19.eps.b == 39);
  REQUIRE(u19.unit_norm == 1);
}

TEST_CASE("fundamental_unit is a unit and exceeds 1", "[pell]") {
  for (long long D = 2; D <= 150; ++D) {
    Int r = arith::isqrt(Int(D));
    if (r * r == D) continue;
    auto u = fundamental_unit(D);
    REQUIRE(u.eps.a >= 1);
    REQUIRE(u.eps.b >= 1);
    REQUIRE(u.eps.a * u.eps.a - Int(D) * u.eps.b * u.eps.b == u.unit_norm);
  }
}

TEST_CASE("solve_small_norm pins", "[pell]") {
  auto s = solve_small_norm(6, -2);
  REQUIRE(s.has_value());
  REQUIRE(s->x == 2);
  REQUIRE(s->y == 1);

  auto s61 = solve_small_norm(6, 1);
  REQUIRE(s61.has_value());
  REQUIRE(s61->x == 5);
  REQUIRE(s61->y == 2);

  REQUIRE_FALSE(solve_small_norm(6, 2).has_value());
  REQUIRE_FALSE(solve_small_norm(6, -1).has_value());

  auto s2 = solve_small_norm(2, -1);
  REQUIRE((s2->x == 1 && s2->y == 1));
  auto s2m2 = solve_small_norm(2, -2);
  REQUIRE((s2m2->x == 0 && s2m2->y == 1));
  auto s2p2 = solve_small_norm(2, 2);
  REQUIRE((s2p2->x == 2 && s2p2->y == 1));

  auto s3 = solve_small_norm(3, -2);
  REQUIRE((s3->x == 1 && s3->y == 1));
  REQUIRE_FALSE(solve_small_norm(3, 2, 20000).has_value());
  REQUIRE_FALSE(solve_small_norm(3, -1, 20000).has_value());

  auto s5 = solve_small_norm(5, -1);
  REQUIRE((s5->x == 2 && s5->y == 1));
  auto s13 = solve_small_norm(13, -1);
  REQUIRE((s13->x == 18 && s13->y == 5));

  REQUIRE_THROWS_AS(solve_small_norm(6, 3), DomainError);
  REQUIRE_THROWS_AS(solve_small_norm(6, 0), DomainError);
  REQUIRE_THROWS_AS(solve_small_norm(9, 1), DomainError);
}

TEST_CASE("solve_small_norm returns the minimal y", "[pell]") {
  for (long long D : {2LL, 3LL, 5LL, 6LL, 10LL, 13LL, 14LL, 22LL, 31LL}) {
    for (long long N : {-2LL, -1LL, 1LL, 2LL}) {
      auto sol = solve_small_norm(D, N, 20000);
      long long first = 0;
      for (long long y = 1; y <= 300; ++y) {
        Int x2 = Int(N) + Int(D) * y * y;
        if (x2 >= 0 && arith::is_square(x2)) {
          first = y;
          break;
        }
      }
      if (sol && sol->y <= 300) {
        REQUIRE(sol->x * sol->x - Int(D) * sol->y * sol->y == N);
        REQUIRE(sol->y == first);
      } else if (!sol) {
        REQUIRE(first == 0);
      }
    }
  }
}

TEST_CASE("solve_eq2 pins", "[pell]") {
  auto e5 = solve_eq2(5);  // gamma(5) = 1
  REQUIRE((e5->x == 2 && e5->y == 1));
  auto e3 = solve_eq2(3);  // gamma(3) = 2
  REQUIRE((e3->x == 1 && e3->y == 1));
  auto e2 = solve_eq2(2);
  REQUIRE((e2->x == 1 && e2->y == 1));
  REQUIRE_FALSE(solve_eq2(6).has_value());
  REQUIRE_FALSE(solve_eq2(7).has_value());
  REQUIRE_THROWS_AS(solve_eq2(1), DomainError);
}

TEST_CASE("eta_decomposition pins", "[pell]") {
  auto e6 = eta_decomposition(6);
  REQUIRE(e6.exists);
  REQUIRE(e6.omega.a == 2);
  REQUIRE(e6.omega.b == 1);
  REQUIRE(e6.omega_norm == -2);
  REQUIRE(e6.eta.a == 5);
  REQUIRE(e6.eta.b == 2);
  REQUIRE(e6.i0 == 1);

  auto e10 = eta_decomposition(10);
  REQUIRE_FALSE(e10.exists);

  auto e14 = eta_decomposition(14);
  REQUIRE(e14.exists);
  REQUIRE(e14.omega.a == 4);
  REQUIRE(e14.omega.b == 1);
  REQUIRE(e14.omega_norm == 2);
  REQUIRE(e14.eta.a == 15);
  REQUIRE(e14.eta.b == 4);
  REQUIRE(e14.i0 == 1);

  auto e22 = eta_decomposition(22);
  REQUIRE(e22.exists);
  REQUIRE(e22.omega.a == 14);
  REQUIRE(e22.omega.b == 3);
  REQUIRE(e22.eta.a == 197);
  REQUIRE(e22.eta.b == 42);
  REQUIRE(e22.i0 == 1);

  auto e2 = eta_decomposition(2);  // omega = sqrt(2), eta = 1
  REQUIRE(e2.exists);
  REQUIRE(e2.omega.a == 0);
  REQUIRE(e2.omega.b == 1);
  REQUIRE(e2.eta.a == 1);
  REQUIRE(e2.eta.b == 0);
  REQUIRE(e2.i0 == 0);

  REQUIRE_THROWS_AS(eta_decomposition(12), DomainError);  // D/2 even
  REQUIRE_THROWS_AS(eta_decomposition(18), DomainError);  // D/2 = 9
  REQUIRE_THROWS_AS(eta_decomposition(7), DomainError);   // odd
}

TEST_CASE("eta_decomposition is internally consistent", "[pell]") {
  for (long long d = 1; d <= 59; d += 2) {
    if (!squarefree_ll(d)) continue;
    Int D(2 * d);
    auto e = eta_decomposition(D);
    if (!e.exists) {
      REQUIRE_FALSE(solve_small_norm(D, -2).has_value());
      REQUIRE_FALSE(solve_small_norm(D, 2).has_value());
      continue;
    }
    REQUIRE(quadfield::norm(e.omega) == e.omega_norm);
    REQUIRE((e.omega_norm == 2 || e.omega_norm == -2));
    QuadInt sq = quadfield::mul(e.omega, e.omega);
    REQUIRE(sq.a == 2 * e.eta.a);
    REQUIRE(sq.b == 2 * e.eta.b);
    auto u = fundamental_unit(D);
    QuadInt pw{1, 0, e.eta.m};
    for (int i = 0; i < e.i0; ++i) pw = quadfield::mul(pw, u.eps);
    REQUIRE(pw == e.eta);
  }
}

TEST_CASE("norm discipline: +-2 solvable forces unit norm +1", "[pell]") {
  for (long long d = 3; d <= 99; d += 2) {
    if (!squarefree_ll(d)) continue;
    Int D(2 * d);
    bool pm2 = solve_small_norm(D, -2).has_value() ||
               solve_small_norm(D, 2).has_value();
    if (pm2) REQUIRE(fundamental_unit(D).unit_norm == 1);
  }
}

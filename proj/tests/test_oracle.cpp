#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "quadsq/oracle.hpp"

using namespace quadsq;
using namespace quadsq::oracle;
using quadfield::FieldSpec;
using quadfield::QuadInt;
using quadfield::make;

TEST_CASE("brute_force pinned witnesses", "[oracle]") {
  FieldSpec f(-6);
  auto w = brute_force(f, make(f, 1, 2), 10);
  REQUIRE(w.has_value());
  REQUIRE(w->first == make(f, 3, 1));
  REQUIRE(w->second == make(f, -2, 1));

  FieldSpec g(6);
  auto w2 = brute_force(g, make(g, 11, 4), 10);
  REQUIRE(w2.has_value());
  REQUIRE(w2->first == make(g, 2, 1));
  REQUIRE(w2->second == make(g, 1, 0));

  REQUIRE_FALSE(brute_force(f, make(f, 5, 1), 200).has_value());
}

TEST_CASE("brute_force validates input", "[oracle]") {
  FieldSpec f(-6);
  REQUIRE_THROWS_AS(brute_force(f, make(f, 0, 0), 10), DomainError);
  REQUIRE_THROWS_AS(brute_force(f, make(f, 1, 0), -1), DomainError);
  FieldSpec g(6);
  REQUIRE_THROWS_AS(brute_force(f, make(g, 1, 0), 10), DomainError);
}

TEST_CASE("witnesses verify, are normalized, and are ordered", "[oracle]") {
  for (long long m : {-6LL, 6LL}) {
    FieldSpec f(m);
    for (long long a = -5; a <= 5; ++a)
      for (long long b = -5; b <= 5; ++b) {
        if (a == 0 && b == 0) continue;
        QuadInt alpha = make(f, a, b);
        auto w = brute_force(f, alpha, 30);
        if (!w) continue;
        QuadInt sum = quadfield::add(quadfield::mul(w->first, w->first),
                                     quadfield::mul(w->second, w->second));
        REQUIRE(sum == alpha);
        for (const QuadInt* c : {&w->first, &w->second}) {
          REQUIRE((c->b > 0 || (c->b == 0 && c->a >= 0)));
        }
        using boost::multiprecision::abs;
        Int s1 = abs(w->first.a) + abs(w->first.b);
        Int s2 = abs(w->second.a) + abs(w->second.b);
        bool ordered =
            s1 > s2 ||
            (s1 == s2 &&
             (w->first.a > w->second.a ||
              (w->first.a == w->second.a && w->first.b >= w->second.b)));
        REQUIRE(ordered);
      }
  }
}

TEST_CASE("first witness is stable as the bound grows", "[oracle]") {
  for (long long m : {-6LL, 6LL}) {
    FieldSpec f(m);
    for (long long a = -4; a <= 4; ++a)
      for (long long b = -4; b <= 4; ++b) {
        if (a == 0 && b == 0) continue;
        QuadInt alpha = make(f, a, b);
        auto w10 = brute_force(f, alpha, 10);
        if (!w10) continue;
        auto w25 = brute_force(f, alpha, 25);
        auto w60 = brute_force(f, alpha, 60);
        REQUIRE(w25.has_value());
        REQUIRE(w60.has_value());
        REQUIRE(*w10 == *w25);
        REQUIRE(*w10 == *w60);
      }
  }
}

TEST_CASE("square elements are found at shell zero", "[oracle]") {
  FieldSpec f(-6);
  QuadInt y = make(f, 7, 3);
  QuadInt alpha = quadfield::mul(y, y);
  auto w = brute_force(f, alpha, 10);
  REQUIRE(w.has_value());
  REQUIRE(w->first == quadfield::sign_normalize(y));
  REQUIRE(w->second == make(f, 0, 0));
}

TEST_CASE("arbitrary-precision path agrees on large inputs", "[oracle]") {
  FieldSpec f(-6);
  // Coordinates beyond the machine-integer guard: route through the big path.
  QuadInt y = make(f, 1200001, 700001);
  QuadInt alpha = quadfield::mul(y, y);
  auto w = brute_force(f, alpha, 3);
  REQUIRE(w.has_value());
  REQUIRE(w->first == quadfield::sign_normalize(y));
  REQUIRE(w->second == make(f, 0, 0));

  QuadInt none = make(f, 3000000, 1);  // odd irrational part: no witness
  REQUIRE_FALSE(brute_force(f, none, 3).has_value());
}

TEST_CASE("brute_force is deterministic", "[oracle]") {
  FieldSpec f(-6);
  FieldSpec g(6);
  for (long long a = -3; a <= 3; ++a)
    for (long long b = -3; b <= 3; ++b) {
      if (a == 0 && b == 0) continue;
      for (const FieldSpec* fs : {&f, &g}) {
        QuadInt alpha = make(*fs, a, b);
        auto wf = brute_force(*fs, alpha, 25);
        auto wf2 = brute_force(*fs, alpha, 25);
        REQUIRE(wf == wf2);
      }
    }
}

TEST_CASE("half-coordinate search for -1", "[oracle]") {
  // d = 3: (-1 + sqrt(-3))/2 and its conjugate square to -1.
  auto s3 = brute_force_halfcoords_minus1(3, 10);
  REQUIRE(s3.has_value());
  // d = 7: 2 splits in Q(sqrt(-7)) and x^2 + y^2 = -1 fails 2-adically.
  REQUIRE_FALSE(brute_force_halfcoords_minus1(7, 10).has_value());
  auto s11 = brute_force_halfcoords_minus1(11, 10);
  REQUIRE(s11.has_value());
  auto s19 = brute_force_halfcoords_minus1(19, 20);
  REQUIRE(s19.has_value());
  // d = 15: 2 splits in Q(sqrt(-15)) and x^2 + y^2 = -1 fails 2-adically.
  REQUIRE_FALSE(brute_force_halfcoords_minus1(15, 10).has_value());
  REQUIRE_THROWS_AS(brute_force_halfcoords_minus1(5, 10), DomainError);
  REQUIRE_THROWS_AS(brute_force_halfcoords_minus1(4, 10), DomainError);
}

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadsq/arith.hpp"
#include "quadsq/errors.hpp"

namespace quadsq {
namespace quadfield {

// ---------------------------------------------------------------------------
// Field and ring element types
// ---------------------------------------------------------------------------

// A real or imaginary quadratic ring Z[sqrt(m)]. Validation restricts m to the
// squarefree radicands with m = 2 or 3 (mod 4), where Z[sqrt(m)] is the full
// ring of integers of Q(sqrt(m)).
struct FieldSpec {
  long long m;

  explicit FieldSpec(long long m_in) : m(m_in) {
    if (m == 0 || m == 1)
      throw DomainError("field radicand must not be 0 or 1");
    long long r4 = arith::mod_floor_ll(m, 4);
    if (r4 != 2 && r4 != 3)
      throw DomainError(
          "field radicand must be congruent to 2 or 3 mod 4 (otherwise "
          "Z[sqrt(m)] is not the maximal order)");
    auto fac = arith::factorize(Int(m));
    for (const auto& [p, e] : fac.factors) {
      if (e > 1) throw DomainError("field radicand must be squarefree");
    }
  }
};

// Element a + b*sqrt(m). Kept as a plain aggregate so that intermediate
// quantities (e.g. continued-fraction convergents with m = 1 mod 4) can use
// the same representation without passing field validation.
struct QuadInt {
  Int a;
  Int b;
  long long m = 0;

  bool operator==(const QuadInt& o) const {
    return a == o.a && b == o.b && m == o.m;
  }
  bool operator!=(const QuadInt& o) const { return !(*this == o); }
};

inline QuadInt make(const FieldSpec& f, Int a, Int b) {
  return QuadInt{std::move(a), std::move(b), f.m};
}

inline void require_same_field(const QuadInt& x, const QuadInt& y) {
  if (x.m != y.m)
    throw DomainError("operands belong to different quadratic rings");
}

inline QuadInt add(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  return QuadInt{x.a + y.a, x.b + y.b, x.m};
}

inline QuadInt sub(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  return QuadInt{x.a - y.a, x.b - y.b, x.m};
}

inline QuadInt mul(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  return QuadInt{x.a * y.a + Int(x.m) * x.b * y.b, x.a * y.b + x.b * y.a, x.m};
}

inline QuadInt neg(const QuadInt& x) { return QuadInt{-x.a, -x.b, x.m}; }

inline QuadInt conj(const QuadInt& x) { return QuadInt{x.a, -x.b, x.m}; }

inline Int norm(const QuadInt& x) { return x.a * x.a - Int(x.m) * x.b * x.b; }

inline bool is_zero(const QuadInt& x) { return x.a == 0 && x.b == 0; }

inline std::string to_string(const QuadInt& x) {
  std::string s = x.a.str();
  s += (x.b < 0 ? "-" : "+");
  s += Int(boost::multiprecision::abs(x.b)).str();
  s += "*sqrt(" + std::to_string(x.m) + ")";
  return s;
}

// Canonical sign: make the coefficient of sqrt(m) non-negative, and the
// rational part non-negative when the irrational part vanishes.
inline QuadInt sign_normalize(const QuadInt& x) {
  if (x.b < 0 || (x.b == 0 && x.a < 0)) return neg(x);
  return x;
}

// ---------------------------------------------------------------------------
// Prime splitting
// ---------------------------------------------------------------------------

enum class SplitType { Ramified, Split, Inert };

inline const char* to_string(SplitType t) {
  switch (t) {
    case SplitType::Ramified: return "Ramified";
    case SplitType::Split: return "Split";
    case SplitType::Inert: return "Inert";
  }
  return "?";
}

inline SplitType splitting_type(const FieldSpec& f, const Int& p) {
  if (!arith::is_prime(p) || p < 2)
    throw DomainError("splitting_type: argument must be a positive prime");
  if (p == 2) return SplitType::Ramified;  // disc = 4m for m = 2, 3 mod 4
  if (Int(f.m) % p == 0) return SplitType::Ramified;
  int j = arith::jacobi(Int(f.m), p);
  return j == 1 ? SplitType::Split : SplitType::Inert;
}

// ---------------------------------------------------------------------------
// Exact square root in the ring
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<Int> divide_exact(const Int& num, const Int& den) {
  if (den == 0) return std::nullopt;
  Int q = num / den;
  if (q * den != num) return std::nullopt;
  return q;
}

}  // namespace detail

// The square roots of c in Z[sqrt(m)], if any, are +-y for a single y; returns
// the sign-normalized one. Solves y1^2 + m*y2^2 = c1, 2*y1*y2 = c2 exactly:
// for c2 != 0, y1^2 and m*y2^2 are the roots of z^2 - c1*z + m*(c2/2)^2, so
// y1^2 = (c1 +- w)/2 with w^2 = norm(c).
inline std::optional<QuadInt> sqrt_in_ring(const QuadInt& c) {
  const Int& c1 = c.a;
  const Int& c2 = c.b;
  const Int m(c.m);
  if (c1 == 0 && c2 == 0) return QuadInt{0, 0, c.m};

  if (c2 == 0) {
    if (c1 > 0 && arith::is_square(c1))
      return sign_normalize(QuadInt{arith::isqrt(c1), 0, c.m});
    if (auto q = detail::divide_exact(c1, m)) {
      if (*q > 0 && arith::is_square(*q))
        return sign_normalize(QuadInt{0, arith::isqrt(*q), c.m});
    }
    return std::nullopt;
  }

  Int nc = c1 * c1 - m * c2 * c2;
  if (!arith::is_square(nc)) return std::nullopt;
  Int w = arith::isqrt(nc);
  for (int pick = 0; pick < 2; ++pick) {
    Int z2 = pick == 0 ? Int(c1 + w) : Int(c1 - w);
    if (z2 < 0 || z2 % 2 != 0) continue;
    Int z = z2 / 2;
    if (!arith::is_square(z)) continue;
    Int y1 = arith::isqrt(z);
    if (y1 == 0) continue;
    auto q = detail::divide_exact(c1 - z, m);
    if (!q || *q < 0 || !arith::is_square(*q)) continue;
    Int y2 = arith::isqrt(*q);
    if (y2 == 0) continue;
    QuadInt y{y1, y2, c.m};
    if (2 * y1 * y2 == -c2) y.b = -y2;
    else if (2 * y1 * y2 != c2) continue;
    if (mul(y, y) != c) continue;
    return sign_normalize(y);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Real embeddings
// ---------------------------------------------------------------------------

namespace detail {

// Exact test of a + b*sqrt(m) > 0 for real m > 0.
inline bool embedding_positive(const Int& a, const Int& b, long long m) {
  if (a >= 0 && b >= 0) return !(a == 0 && b == 0);
  if (a < 0 && b < 0) return false;
  if (a >= 0) return a * a > Int(m) * b * b;  // b < 0
  return Int(m) * b * b > a * a;              // a < 0, b > 0
}

}  // namespace detail

// Both real embeddings positive. Only meaningful for real fields.
inline bool totally_positive(const FieldSpec& f, const QuadInt& x) {
  if (f.m < 0)
    throw DomainError("totally_positive: field must be real (m > 0)");
  if (x.m != f.m) throw DomainError("totally_positive: field mismatch");
  return detail::embedding_positive(x.a, x.b, f.m) &&
         detail::embedding_positive(x.a, -x.b, f.m);
}

// ---------------------------------------------------------------------------
// Norm profile: the factorization data the decision criterion consumes
// ---------------------------------------------------------------------------

struct NormProfile {
  unsigned s1 = 0;  // ord_2 |norm(alpha)|
  unsigned s2 = 0;  // ord_3 |norm(alpha)|
  std::vector<std::pair<Int, unsigned>> odd_primes;  // primes > 3, sorted
  unsigned s3 = 0;  // ord_3 of the rational part a
  Int a1;           // a / 3^s3 (prime to 3, sign preserved)
};

inline NormProfile norm_profile(const FieldSpec& f, const QuadInt& x) {
  if (x.m != f.m) throw DomainError("norm_profile: field mismatch");
  if (x.a == 0)
    throw DomainError("norm profile undefined when the rational part is zero");
  Int n = norm(x);
  if (n == 0) throw DomainError("norm_profile: element has zero norm");
  NormProfile out;
  auto fac = arith::factorize(n);
  for (const auto& [p, e] : fac.factors) {
    if (p == 2) out.s1 = e;
    else if (p == 3) out.s2 = e;
    else out.odd_primes.emplace_back(p, e);
  }
  out.s3 = 0;
  Int a1 = x.a;
  while (a1 % 3 == 0) {
    a1 /= 3;
    ++out.s3;
  }
  out.a1 = a1;
  return out;
}

}  // namespace quadfield
}  // namespace quadsq

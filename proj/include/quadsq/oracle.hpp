#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "quadsq/arith.hpp"
#include "quadsq/errors.hpp"
#include "quadsq/quadfield.hpp"

namespace quadsq {
namespace oracle {

using quadfield::FieldSpec;
using quadfield::QuadInt;

using WitnessPair = std::pair<QuadInt, QuadInt>;

// ---------------------------------------------------------------------------
// Canonical witness presentation
// ---------------------------------------------------------------------------

namespace detail {

inline bool presentation_less(const QuadInt& u, const QuadInt& v) {
  using boost::multiprecision::abs;
  Int su = abs(u.a) + abs(u.b);
  Int sv = abs(v.a) + abs(v.b);
  if (su != sv) return su < sv;
  if (u.a != v.a) return u.a < v.a;
  return u.b < v.b;
}

}  // namespace detail

// Sign-normalize both components and put the larger one first.
inline WitnessPair present(QuadInt x, QuadInt y) {
  x = quadfield::sign_normalize(x);
  y = quadfield::sign_normalize(y);
  if (detail::presentation_less(x, y)) std::swap(x, y);
  return {x, y};
}

// ---------------------------------------------------------------------------
// Enumeration order
// ---------------------------------------------------------------------------
//
// Candidates x = (x1, x2) are visited shell by shell (shell r holds the pairs
// with max(|x1|, |x2|) = r), and within a shell in ascending order of
// (|x1| + |x2|, |x1|, |x2|, sign bits). Enumerating by shells makes the first
// hit stable under enlarging the bound.

namespace detail {

struct Cand {
  long long x1, x2;
};

inline std::vector<Cand> shell(long long r) {
  std::vector<Cand> out;
  if (r == 0) {
    out.push_back({0, 0});
    return out;
  }
  for (long long x2 = -r; x2 <= r; ++x2) {
    out.push_back({r, x2});
    out.push_back({-r, x2});
  }
  for (long long x1 = -r + 1; x1 <= r - 1; ++x1) {
    out.push_back({x1, r});
    out.push_back({x1, -r});
  }
  auto key = [](const Cand& c) {
    return std::make_tuple(std::llabs(c.x1) + std::llabs(c.x2),
                           std::llabs(c.x1), std::llabs(c.x2), c.x1 < 0,
                           c.x2 < 0);
  };
  std::sort(out.begin(), out.end(),
            [&](const Cand& a, const Cand& b) { return key(a) < key(b); });
  return out;
}

// ---------------------------------------------------------------------------
// Fast exact square-root helpers on machine integers
// ---------------------------------------------------------------------------

inline bool square_mod64(unsigned long long r) {
  static constexpr unsigned long long mask = [] {
    unsigned long long m = 0;
    for (unsigned i = 0; i < 64; ++i) m |= 1ULL << ((i * i) & 63);
    return m;
  }();
  return (mask >> (r & 63)) & 1ULL;
}

inline bool u128_perfect_sqrt(unsigned __int128 v, unsigned __int128& root) {
  if (!square_mod64(static_cast<unsigned long long>(v & 63))) return false;
  unsigned __int128 r;
  if (v <= 0xFFFFFFFFFFFFFFFFULL) {
    auto sv = static_cast<unsigned long long>(v);
    auto r64 = static_cast<unsigned long long>(
        std::sqrt(static_cast<double>(sv)));
    if (r64 > 0xFFFFFFFFULL) r64 = 0xFFFFFFFFULL;
    r = r64;
  } else {
    r = static_cast<unsigned long long>(sqrtl(static_cast<long double>(v)));
  }
  while (r > 0 && r * r > v) --r;
  while (r < 0xFFFFFFFFFFFFFFFFULL && (r + 1) * (r + 1) <= v) ++r;
  root = r;
  return r * r == v;
}

struct SmallRoot {
  long long y1, y2;
};

// Square root of c1 + c2*sqrt(m) in Z[sqrt(m)] on machine integers; mirrors
// quadfield::sqrt_in_ring (sign-normalized result).
inline std::optional<SmallRoot> small_sqrt_in_ring(long long c1, long long c2,
                                                   long long m) {
  using i128 = __int128;
  using u128 = unsigned __int128;
  auto norm_small = [](SmallRoot r) {
    if (r.y2 < 0 || (r.y2 == 0 && r.y1 < 0)) {
      r.y1 = -r.y1;
      r.y2 = -r.y2;
    }
    return r;
  };
  if (c1 == 0 && c2 == 0) return SmallRoot{0, 0};
  if (c2 == 0) {
    if (c1 > 0) {
      u128 rt;
      if (u128_perfect_sqrt(static_cast<u128>(c1), rt))
        return norm_small({static_cast<long long>(rt), 0});
    }
    long long q = c1 / m;
    if (q * m == c1 && q > 0) {
      u128 rt;
      if (u128_perfect_sqrt(static_cast<u128>(q), rt))
        return norm_small({0, static_cast<long long>(rt)});
    }
    return std::nullopt;
  }
  i128 nc = static_cast<i128>(c1) * c1 - static_cast<i128>(m) * c2 * c2;
  if (nc < 0) return std::nullopt;
  u128 w;
  if (!u128_perfect_sqrt(static_cast<u128>(nc), w)) return std::nullopt;
  for (int pick = 0; pick < 2; ++pick) {
    i128 z2 = pick == 0 ? static_cast<i128>(c1) + static_cast<i128>(w)
                        : static_cast<i128>(c1) - static_cast<i128>(w);
    if (z2 < 0 || (z2 & 1)) continue;
    i128 z = z2 >> 1;
    u128 y1r;
    if (!u128_perfect_sqrt(static_cast<u128>(z), y1r)) continue;
    auto y1 = static_cast<long long>(y1r);
    if (y1 == 0) continue;
    i128 rem = static_cast<i128>(c1) - z;
    i128 q = rem / m;
    if (q * m != rem || q < 0) continue;
    u128 y2r;
    if (!u128_perfect_sqrt(static_cast<u128>(q), y2r)) continue;
    auto y2 = static_cast<long long>(y2r);
    if (y2 == 0) continue;
    i128 twice = static_cast<i128>(2) * y1 * y2;
    SmallRoot cand{y1, y2};
    if (twice == -static_cast<i128>(c2)) cand.y2 = -y2;
    else if (twice != static_cast<i128>(c2)) continue;
    i128 back1 = static_cast<i128>(cand.y1) * cand.y1 +
                 static_cast<i128>(m) * cand.y2 * cand.y2;
    i128 back2 = static_cast<i128>(2) * cand.y1 * cand.y2;
    if (back1 != c1 || back2 != c2) continue;
    return norm_small(cand);
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The oracle proper
// ---------------------------------------------------------------------------

// Exhaustive search for x^2 + y^2 = alpha with max(|x1|, |x2|) <= bound.
// Returns the first witness in enumeration order (hence a bound-stable one),
// re-verified exactly before returning.
inline std::optional<WitnessPair> brute_force(const FieldSpec& f,
                                              const QuadInt& alpha,
                                              long long bound) {
  using boost::multiprecision::abs;
  if (alpha.m != f.m) throw DomainError("brute_force: field mismatch");
  if (quadfield::is_zero(alpha))
    throw DomainError("brute_force: alpha must be nonzero");
  if (bound < 0) throw DomainError("brute_force: bound must be >= 0");

  bool fast = bound <= 20000 && abs(alpha.a) <= 1000000 &&
              abs(alpha.b) <= 1000000 && std::llabs(f.m) <= 1000;

  auto finish = [&](const QuadInt& x, const QuadInt& y)
      -> std::optional<WitnessPair> {
    QuadInt lhs = quadfield::add(quadfield::mul(x, x), quadfield::mul(y, y));
    check(lhs == alpha, "brute_force: candidate witness failed verification");
    return present(x, y);
  };

  if (fast) {
    long long a = alpha.a.convert_to<long long>();
    long long b = alpha.b.convert_to<long long>();
    long long m = f.m;
    for (long long r = 0; r <= bound; ++r) {
      for (const auto& c : detail::shell(r)) {
        long long sq1 = c.x1 * c.x1 + m * c.x2 * c.x2;
        long long sq2 = 2 * c.x1 * c.x2;
        long long c1 = a - sq1;
        long long c2 = b - sq2;
        auto root = detail::small_sqrt_in_ring(c1, c2, m);
        if (!root) continue;
        QuadInt x{Int(c.x1), Int(c.x2), m};
        QuadInt y{Int(root->y1), Int(root->y2), m};
        return finish(x, y);
      }
    }
    return std::nullopt;
  }

  for (long long r = 0; r <= bound; ++r) {
    for (const auto& c : detail::shell(r)) {
      QuadInt x{Int(c.x1), Int(c.x2), f.m};
      QuadInt rest = quadfield::sub(alpha, quadfield::mul(x, x));
      auto root = quadfield::sqrt_in_ring(rest);
      if (!root) continue;
      return finish(x, *root);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Half-coordinate search in maximal orders of Q(sqrt(-d)), d = 3 mod 4
// ---------------------------------------------------------------------------

// A point (u + v*sqrt(-d))/2 with u = v mod 2.
struct HalfPoint {
  long long u, v;
};

// Searches x^2 + y^2 = -1 over the full ring of integers of Q(sqrt(-d)) for
// d = 3 mod 4 (where Z[sqrt(-d)] has index 2 in it). Coordinates of x run
// over |u|, |v| <= 2*bound; y is reconstructed exactly from
// s^2 + m t^2 = S, s t = P (roots of z^2 - S z + m P^2).
inline std::optional<std::pair<HalfPoint, HalfPoint>>
brute_force_halfcoords_minus1(long long d, long long bound) {
  if (d < 3 || d % 4 != 3)
    throw DomainError("brute_force_halfcoords_minus1: d must be 3 mod 4");
  if (bound < 1 || bound > 10000 || d > 1000000)
    throw DomainError("brute_force_halfcoords_minus1: parameters out of range");
  using i128 = __int128;
  const long long m = -d;
  const long long lim = 2 * bound;

  auto verify = [&](HalfPoint x, HalfPoint y) {
    i128 ra = static_cast<i128>(x.u) * x.u + static_cast<i128>(m) * x.v * x.v +
              static_cast<i128>(y.u) * y.u + static_cast<i128>(m) * y.v * y.v;
    i128 rb = static_cast<i128>(2) * x.u * x.v + static_cast<i128>(2) * y.u * y.v;
    return ra == -4 && rb == 0;
  };

  for (long long u = -lim; u <= lim; ++u) {
    for (long long v = -lim; v <= lim; ++v) {
      if (((u - v) & 1) != 0) continue;
      i128 S = static_cast<i128>(-4) - static_cast<i128>(u) * u -
               static_cast<i128>(m) * v * v;
      long long P = -u * v;
      if (P == 0) {
        // Degenerate: one of s, t vanishes (or both, when S = 0).
        if (S % m == 0) {
          i128 q = S / m;
          unsigned __int128 rt;
          if (q >= 0 && detail::u128_perfect_sqrt(
                            static_cast<unsigned __int128>(q), rt)) {
            auto t = static_cast<long long>(rt);
            if ((t & 1) == 0) {
              HalfPoint x{u, v}, y{0, t};
              if (verify(x, y)) return std::make_pair(x, y);
            }
          }
        }
        if (S >= 0) {
          unsigned __int128 rt;
          if (detail::u128_perfect_sqrt(static_cast<unsigned __int128>(S),
                                        rt)) {
            auto s = static_cast<long long>(rt);
            if ((s & 1) == 0) {
              HalfPoint x{u, v}, y{s, 0};
              if (verify(x, y)) return std::make_pair(x, y);
            }
          }
        }
        continue;
      }
      i128 disc = S * S - static_cast<i128>(4) * m * P * P;
      if (disc < 0) continue;
      unsigned __int128 wr;
      if (!detail::u128_perfect_sqrt(static_cast<unsigned __int128>(disc), wr))
        continue;
      i128 w = static_cast<i128>(wr);
      for (int pick = 0; pick < 2; ++pick) {
        i128 z2 = pick == 0 ? S + w : S - w;
        if (z2 < 0 || (z2 & 1)) continue;
        i128 z = z2 >> 1;
        unsigned __int128 sr;
        if (!detail::u128_perfect_sqrt(static_cast<unsigned __int128>(z), sr))
          continue;
        auto s = static_cast<long long>(sr);
        if (s == 0) continue;
        if (P % s != 0) continue;
        long long t = P / s;
        if (((s - t) & 1) != 0) continue;
        HalfPoint x{u, v}, y{s, t};
        if (verify(x, y)) return std::make_pair(x, y);
      }
    }
  }
  return std::nullopt;
}

}  // namespace oracle
}  // namespace quadsq

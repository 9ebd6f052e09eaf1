#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quadsq/arith.hpp"
#include "quadsq/dsets.hpp"
#include "quadsq/errors.hpp"
#include "quadsq/quadfield.hpp"

namespace quadsq {
namespace localsolve {

using quadfield::FieldSpec;
using quadfield::QuadInt;

constexpr int kOrdInf = 1 << 28;
constexpr size_t kWidthCap = 400000;

// Verdict for a single place. `archimedean` marks the pair of real embeddings
// (only present for real fields); otherwise `prime` identifies the place.
struct LocalVerdict {
  bool archimedean = false;
  Int prime = 0;
  bool solvable = false;
  int precision_used = 1;
};

struct LocalAnalysis {
  bool solvable = true;
  std::vector<LocalVerdict> verdicts;
};

// ---------------------------------------------------------------------------
// Digit-by-digit p-adic search with a Newton certificate
// ---------------------------------------------------------------------------
//
// The completion of a quadratic order at a prime with a unique prime above it
// is a complete DVR; we search solutions of x^2 + y^2 = alpha coordinatewise
// mod p^k, keeping states whose value has valuation >= e*k (e = ramification
// index), and stop early when a state satisfies the one-variable Newton
// condition v(f) > 2*v(2x) (or 2*v(2y)), which guarantees a lift.

enum class OrdKind {
  RamSqrt,  // basis (1, t), t = sqrt(m), p ramified through t
  RamOdd2,  // p = 2, m = 3 mod 4: valuation via ord_2 of the norm form
  Unram     // inert prime: valuation = min of coordinate valuations
};

namespace detail {

template <class I>
inline int ord_of(I v, long long p) {
  if (v == 0) return kOrdInf;
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

inline __int128 to_i128(const Int& v) {
  Int a = boost::multiprecision::abs(v);
  unsigned long long lo =
      (a & Int(0xFFFFFFFFFFFFFFFFULL)).convert_to<unsigned long long>();
  unsigned long long hi = (a >> 64).convert_to<unsigned long long>();
  __int128 r = static_cast<__int128>(
      (static_cast<unsigned __int128>(hi) << 64) | lo);
  return v < 0 ? -r : r;
}

template <class I>
struct QuadEngine {
  long long p;
  I B, C;
  OrdKind kind;
  int e;
  I ta, tb;
  int Kmax;
  size_t cap;

  int ordv_pair(const I& z1, const I& z2) const {
    switch (kind) {
      case OrdKind::RamSqrt: {
        int o1 = ord_of(z1, p), o2 = ord_of(z2, p);
        int c1 = o1 >= kOrdInf ? kOrdInf : 2 * o1;
        int c2 = o2 >= kOrdInf ? kOrdInf : 2 * o2 + 1;
        return std::min(c1, c2);
      }
      case OrdKind::RamOdd2: {
        I nf = z1 * z1 + B * z1 * z2 - C * z2 * z2;
        return ord_of(nf, p);
      }
      case OrdKind::Unram:
        return std::min(ord_of(z1, p), ord_of(z2, p));
    }
    return 0;
  }

  void f_eval(const I& x1, const I& x2, const I& y1, const I& y2, I& F1,
              I& F2) const {
    F1 = x1 * x1 + C * x2 * x2 + y1 * y1 + C * y2 * y2 - ta;
    F2 = 2 * x1 * x2 + B * x2 * x2 + 2 * y1 * y2 + B * y2 * y2 - tb;
  }

  bool certified(const std::array<I, 4>& s, int of) const {
    int tx = ordv_pair(2 * s[0], 2 * s[1]);
    int ty = ordv_pair(2 * s[2], 2 * s[3]);
    int tau = std::min(tx, ty);
    if (tau >= kOrdInf) return false;
    return of > 2 * tau;
  }

  std::pair<bool, int> run() const {
    std::vector<std::array<I, 4>> cur;
    {
      I F1, F2;
      for (long long d1 = 0; d1 < p; ++d1)
        for (long long d2 = 0; d2 < p; ++d2)
          for (long long d3 = 0; d3 < p; ++d3)
            for (long long d4 = 0; d4 < p; ++d4) {
              std::array<I, 4> s{I(d1), I(d2), I(d3), I(d4)};
              f_eval(s[0], s[1], s[2], s[3], F1, F2);
              int of = ordv_pair(F1, F2);
              if (of < e) continue;
              if (certified(s, of)) return {true, 1};
              cur.push_back(s);
            }
    }
    if (cur.empty()) return {false, 1};
    if (cur.size() > cap)
      throw UndecidedError("local search: state width cap exceeded");
    I pk = p;
    for (int k = 1;; ++k) {
      if (k >= Kmax)
        throw UndecidedError(
            "local search: undecided at precision cap (p=" +
            std::to_string(p) + ", K=" + std::to_string(Kmax) + ")");
      std::vector<std::array<I, 4>> next;
      I F1, F2;
      for (const auto& s : cur) {
        for (long long d1 = 0; d1 < p; ++d1)
          for (long long d2 = 0; d2 < p; ++d2)
            for (long long d3 = 0; d3 < p; ++d3)
              for (long long d4 = 0; d4 < p; ++d4) {
                std::array<I, 4> c{s[0] + d1 * pk, s[1] + d2 * pk,
                                   s[2] + d3 * pk, s[3] + d4 * pk};
                f_eval(c[0], c[1], c[2], c[3], F1, F2);
                int of = ordv_pair(F1, F2);
                if (of < e * (k + 1)) continue;
                if (certified(c, of)) return {true, k + 1};
                next.push_back(c);
              }
      }
      if (next.empty()) return {false, k + 1};
      if (next.size() > cap)
        throw UndecidedError("local search: state width cap exceeded");
      cur = std::move(next);
      pk *= p;
    }
  }
};

// One-prime search for A x^2 + B y^2 = C over Z_p.
template <class I>
struct PlainEngine {
  long long p;
  I A, B, C;
  int Kmax;
  size_t cap;

  bool certified(const I& x, const I& y, int of) const {
    int tx = ord_of(I(2 * A * x), p);
    int ty = ord_of(I(2 * B * y), p);
    int tau = std::min(tx, ty);
    if (tau >= kOrdInf) return false;
    return of > 2 * tau;
  }

  std::pair<bool, int> run() const {
    std::vector<std::array<I, 2>> cur;
    for (long long d1 = 0; d1 < p; ++d1)
      for (long long d2 = 0; d2 < p; ++d2) {
        I x(d1), y(d2);
        I f = A * x * x + B * y * y - C;
        int of = ord_of(f, p);
        if (of < 1) continue;
        if (certified(x, y, of)) return {true, 1};
        cur.push_back({x, y});
      }
    if (cur.empty()) return {false, 1};
    I pk = p;
    for (int k = 1;; ++k) {
      if (k >= Kmax)
        throw UndecidedError(
            "local search: undecided at precision cap (p=" +
            std::to_string(p) + ", K=" + std::to_string(Kmax) + ")");
      std::vector<std::array<I, 2>> next;
      for (const auto& s : cur) {
        for (long long d1 = 0; d1 < p; ++d1)
          for (long long d2 = 0; d2 < p; ++d2) {
            I x = s[0] + d1 * pk;
            I y = s[1] + d2 * pk;
            I f = A * x * x + B * y * y - C;
            int of = ord_of(f, p);
            if (of < k + 1) continue;
            if (certified(x, y, of)) return {true, k + 1};
            next.push_back({x, y});
          }
      }
      if (next.empty()) return {false, k + 1};
      if (next.size() > cap)
        throw UndecidedError("local search: state width cap exceeded");
      cur = std::move(next);
      pk *= p;
    }
  }
};

inline Int pow_int(long long p, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace detail

// Dispatching front end: uses an __int128 engine whenever every intermediate
// fits comfortably, otherwise falls back to arbitrary precision.
inline std::pair<bool, int> quad_digit_search(long long p, const Int& B,
                                              const Int& C, OrdKind kind,
                                              int e, const Int& ta,
                                              const Int& tb, int Kmax,
                                              size_t cap = kWidthCap) {
  if (p < 2 || Kmax < 1) throw DomainError("quad_digit_search: bad parameters");
  using boost::multiprecision::abs;
  Int pk = detail::pow_int(p, Kmax);
  Int vmax = pk * pk * (abs(B) + abs(C) + 4) + abs(ta) + abs(tb);
  if (vmax < (Int(1) << 120)) {
    detail::QuadEngine<__int128> eng{p,
                                     detail::to_i128(B),
                                     detail::to_i128(C),
                                     kind,
                                     e,
                                     detail::to_i128(ta),
                                     detail::to_i128(tb),
                                     Kmax,
                                     cap};
    return eng.run();
  }
  detail::QuadEngine<Int> eng{p, B, C, kind, e, ta, tb, Kmax, cap};
  return eng.run();
}

inline std::pair<bool, int> plain_digit_search(long long p, const Int& A,
                                               const Int& B, const Int& C,
                                               int Kmax,
                                               size_t cap = kWidthCap) {
  if (p < 2 || Kmax < 1) throw DomainError("plain_digit_search: bad parameters");
  using boost::multiprecision::abs;
  Int pk = detail::pow_int(p, Kmax);
  Int vmax = pk * pk * (abs(A) + abs(B) + 1) + abs(C);
  if (vmax < (Int(1) << 120)) {
    detail::PlainEngine<__int128> eng{p, detail::to_i128(A),
                                      detail::to_i128(B), detail::to_i128(C),
                                      Kmax, cap};
    return eng.run();
  }
  detail::PlainEngine<Int> eng{p, A, B, C, Kmax, cap};
  return eng.run();
}

// ---------------------------------------------------------------------------
// Square roots in Z/p^L
// ---------------------------------------------------------------------------

// Square root mod an odd prime (Tonelli-Shanks); n must be a residue.
inline Int sqrt_mod_prime(const Int& n_in, const Int& p) {
  Int n = arith::mod_floor(n_in, p);
  if (n == 0) return 0;
  if (arith::jacobi(n, p) != 1)
    throw DomainError("sqrt_mod_prime: argument is not a quadratic residue");
  if (p % 4 == 3) return arith::mod_pow(n, (p + 1) / 4, p);
  Int q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (arith::jacobi(z, p) != -1) ++z;
  unsigned m = s;
  Int c = arith::mod_pow(z, q, p);
  Int t = arith::mod_pow(n, q, p);
  Int r = arith::mod_pow(n, (q + 1) / 2, p);
  while (t != 1) {
    Int tt = t;
    unsigned i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// Newton lift of a square root of M to modulus p^L (p odd, M a unit mod p).
inline Int hensel_sqrt(const Int& M, const Int& p, int L) {
  if (L < 1) throw DomainError("hensel_sqrt: L must be >= 1");
  Int r = sqrt_mod_prime(M, p);
  if (r == 0) throw DomainError("hensel_sqrt: M must be a unit mod p");
  Int pk = p;
  int have = 1;
  while (have < L) {
    pk = pk * pk;
    have *= 2;
    Int inv = arith::mod_inverse(2 * r, pk);
    r = arith::mod_floor(r - (r * r - M) * inv, pk);
  }
  Int target = 1;
  for (int i = 0; i < L; ++i) target *= p;
  r = arith::mod_floor(r, target);
  check(arith::mod_floor(r * r - M, target) == 0, "hensel_sqrt: lift failed");
  return r;
}

// ---------------------------------------------------------------------------
// x^2 + y^2 = alpha over the completion at one prime
// ---------------------------------------------------------------------------

namespace detail {

inline int kmax_sum2(long long p, const Int& abs_norm) {
  int k = (p == 2 ? 2 : 0) + static_cast<int>(arith::ord_at(abs_norm, Int(p))) + 5;
  return k;
}

inline LocalVerdict make_finite(const Int& p, bool solvable, int precision) {
  LocalVerdict v;
  v.prime = p;
  v.solvable = solvable;
  v.precision_used = std::max(precision, 1);
  return v;
}

// 2-adic analysis: always by digit search (the only prime where the answer
// has irregular congruence structure).
inline LocalVerdict sum2_at_2(const FieldSpec& f, const QuadInt& alpha) {
  Int n = boost::multiprecision::abs(quadfield::norm(alpha));
  int Kmax = kmax_sum2(2, n);
  long long r4 = arith::mod_floor_ll(f.m, 4);
  OrdKind kind = r4 == 2 ? OrdKind::RamSqrt : OrdKind::RamOdd2;
  auto [ok, prec] =
      quad_digit_search(2, Int(0), Int(f.m), kind, 2, alpha.a, alpha.b, Kmax);
  return make_finite(Int(2), ok, prec);
}

// Structured analysis at an odd prime; each branch is backed by a closed-form
// argument over the completion (and cross-checked against the digit search by
// the test suite).
inline LocalVerdict sum2_at_odd(const FieldSpec& f, const QuadInt& alpha,
                                const Int& p) {
  Int m(f.m);
  Int a = alpha.a, b = alpha.b;
  if (m % p == 0) {
    // Ramified: with i in Z_p (p = 1 mod 4) the form is hyperbolic; otherwise
    // solvability is equivalent to even valuation of alpha.
    if (arith::mod_floor(p, 4) == 1) return make_finite(p, true, 1);
    int va = a == 0 ? kOrdInf : static_cast<int>(arith::ord_at(a, p));
    int vb = b == 0 ? kOrdInf : static_cast<int>(arith::ord_at(b, p));
    int c1 = va >= kOrdInf / 2 ? kOrdInf : 2 * va;
    int c2 = vb >= kOrdInf / 2 ? kOrdInf : 2 * vb + 1;
    int ordv = std::min(c1, c2);
    check(ordv < kOrdInf, "sum2_at_odd: zero element");
    return make_finite(p, ordv % 2 == 0, ordv + 1);
  }
  int j = arith::jacobi(m, p);
  if (j == -1) return make_finite(p, true, 1);  // inert: units and even powers
  // Split prime: the completion is Z_p x Z_p via sqrt(m) -> +-r.
  if (arith::mod_floor(p, 4) == 1) return make_finite(p, true, 1);
  Int n = quadfield::norm(alpha);
  check(n != 0, "sum2_at_odd: zero norm");
  unsigned n0 = 0;
  Int nn = boost::multiprecision::abs(n);
  while (nn % p == 0) {
    nn /= p;
    ++n0;
  }
  if (n0 == 0) return make_finite(p, true, 1);
  int L = static_cast<int>(n0) + 1;
  Int r = hensel_sqrt(m, p, L);
  Int pL = detail::pow_int(p.convert_to<long long>(), L);
  Int z1 = arith::mod_floor(a + b * r, pL);
  Int z2 = arith::mod_floor(a - b * r, pL);
  check(z1 != 0 && z2 != 0, "sum2_at_odd: split component vanished mod p^L");
  unsigned v1 = arith::ord_at(z1, p);
  unsigned v2 = arith::ord_at(z2, p);
  check(v1 + v2 == n0, "sum2_at_odd: split valuations do not add up");
  bool ok = (v1 % 2 == 0) && (v2 % 2 == 0);
  return make_finite(p, ok, L);
}

}  // namespace detail

// Local solvability of x^2 + y^2 = alpha at one finite prime (production
// path: digit search at 2, closed forms at odd primes).
inline LocalVerdict local_sum2(const FieldSpec& f, const QuadInt& alpha,
                               const Int& p) {
  if (alpha.m != f.m) throw DomainError("local_sum2: field mismatch");
  if (quadfield::is_zero(alpha))
    throw DomainError("local_sum2: alpha must be nonzero");
  if (!arith::is_prime(p) || p < 2)
    throw DomainError("local_sum2: p must be a positive prime");
  if (p == 2) return detail::sum2_at_2(f, alpha);
  return detail::sum2_at_odd(f, alpha, p);
}

// Reference path: the same question answered purely by digit search (split
// primes are handled as two independent Z_p problems, because the product
// ring is not a DVR and the certificate must be applied per factor).
inline LocalVerdict local_sum2_search(const FieldSpec& f, const QuadInt& alpha,
                                      const Int& p) {
  if (alpha.m != f.m) throw DomainError("local_sum2_search: field mismatch");
  if (quadfield::is_zero(alpha))
    throw DomainError("local_sum2_search: alpha must be nonzero");
  if (!arith::is_prime(p) || p < 2)
    throw DomainError("local_sum2_search: p must be a positive prime");
  if (p == 2) return detail::sum2_at_2(f, alpha);

  Int m(f.m);
  Int n = boost::multiprecision::abs(quadfield::norm(alpha));
  long long pl = p.convert_to<long long>();
  int Kmax = detail::kmax_sum2(pl, n);
  if (m % p == 0) {
    auto [ok, prec] = quad_digit_search(pl, Int(0), m, OrdKind::RamSqrt, 2,
                                        alpha.a, alpha.b, Kmax);
    return detail::make_finite(p, ok, prec);
  }
  if (arith::jacobi(m, p) == -1) {
    auto [ok, prec] = quad_digit_search(pl, Int(0), m, OrdKind::Unram, 1,
                                        alpha.a, alpha.b, Kmax);
    return detail::make_finite(p, ok, prec);
  }
  int L = 2 * Kmax + 3;
  Int r = hensel_sqrt(m, p, L);
  Int pL = detail::pow_int(pl, L);
  Int c1 = arith::mod_floor(alpha.a + alpha.b * r, pL);
  Int c2 = arith::mod_floor(alpha.a - alpha.b * r, pL);
  auto [ok1, prec1] = plain_digit_search(pl, Int(1), Int(1), c1, Kmax);
  if (!ok1) return detail::make_finite(p, false, prec1);
  auto [ok2, prec2] = plain_digit_search(pl, Int(1), Int(1), c2, Kmax);
  return detail::make_finite(p, ok2, std::max(prec1, prec2));
}

// ---------------------------------------------------------------------------
// The archimedean check and the all-places wrapper
// ---------------------------------------------------------------------------

// For real fields a sum of two squares must be totally positive (a nonzero
// sum of squares cannot vanish at a real embedding).
inline std::optional<LocalVerdict> real_check(const FieldSpec& f,
                                              const QuadInt& alpha) {
  if (f.m < 0) return std::nullopt;
  LocalVerdict v;
  v.archimedean = true;
  v.solvable = quadfield::totally_positive(f, alpha);
  v.precision_used = 1;
  return v;
}

// Checks every place that can obstruct: the real embeddings (real fields) and
// the primes dividing 2 * m * norm(alpha). At all other finite primes the
// form x^2 + y^2 represents every unit of an unramified completion.
inline LocalAnalysis locally_solvable_everywhere(const FieldSpec& f,
                                                 const QuadInt& alpha) {
  if (alpha.m != f.m)
    throw DomainError("locally_solvable_everywhere: field mismatch");
  if (quadfield::is_zero(alpha))
    throw DomainError("locally_solvable_everywhere: alpha must be nonzero");
  LocalAnalysis out;
  if (auto rv = real_check(f, alpha)) {
    out.verdicts.push_back(*rv);
    if (!rv->solvable) out.solvable = false;
  }
  Int relevant = 2 * Int(f.m) * quadfield::norm(alpha);
  auto fac = arith::factorize(relevant);
  for (const auto& [p, e] : fac.factors) {
    LocalVerdict v = local_sum2(f, alpha, p);
    if (!v.solvable) out.solvable = false;
    out.verdicts.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Auxiliary norm-form equations used by the applicability classifier
// ---------------------------------------------------------------------------

// Z_p-solvability of x^2 - d y^2 = -gamma(d).
inline std::pair<bool, int> zp_solvable_eq2(const Int& d, const Int& p) {
  if (!arith::is_prime(p) || p < 2)
    throw DomainError("zp_solvable_eq2: p must be a positive prime");
  int g = criteria::gamma(d);
  long long pl = p.convert_to<long long>();
  int Kmax = static_cast<int>(arith::ord_at(4 * d * g, p)) + 5;
  return plain_digit_search(pl, Int(1), Int(-d), Int(-g), Kmax);
}

// Local solvability of x^2 + y^2 = -1 over the ring of integers of
// Q(sqrt(-d)) at every place. Only the prime 2 can obstruct: at odd primes
// -1 is a unit and the completion argument above applies, and an imaginary
// field has no real embedding.
inline bool eq1_locally_solvable(const Int& d) {
  if (d < 2) throw DomainError("eq1_locally_solvable: d must be >= 2");
  auto fac = arith::factorize(d);
  for (const auto& [p, e] : fac.factors) {
    if (e > 1) throw DomainError("eq1_locally_solvable: d must be squarefree");
  }
  Int md = -d;
  long long r4 = arith::mod_floor(md, 4).convert_to<long long>();
  const int Kmax = 7;
  if (r4 == 2) {
    return quad_digit_search(2, Int(0), md, OrdKind::RamSqrt, 2, Int(-1),
                             Int(0), Kmax)
        .first;
  }
  if (r4 == 3) {
    return quad_digit_search(2, Int(0), md, OrdKind::RamOdd2, 2, Int(-1),
                             Int(0), Kmax)
        .first;
  }
  // -d = 1 mod 4: the maximal order is Z[t], t = (1 + sqrt(-d))/2,
  // t^2 = t + (-d - 1)/4.
  Int c = (md - 1) / 4;
  long long r8 = arith::mod_floor(md, 8).convert_to<long long>();
  if (r8 == 1) {
    // 2 splits: each factor is Z_2, where x^2 + y^2 = -1 fails mod 8.
    return plain_digit_search(2, Int(1), Int(1), Int(-1), Kmax).first;
  }
  return quad_digit_search(2, Int(1), c, OrdKind::Unram, 1, Int(-1), Int(0),
                           Kmax)
      .first;
}

}  // namespace localsolve
}  // namespace quadsq

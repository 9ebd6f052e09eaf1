#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadsq/arith.hpp"
#include "quadsq/dsets.hpp"
#include "quadsq/errors.hpp"
#include "quadsq/localsolve.hpp"
#include "quadsq/oracle.hpp"
#include "quadsq/pell.hpp"
#include "quadsq/quadfield.hpp"

namespace quadsq {
namespace criteria {

using quadfield::FieldSpec;
using quadfield::NormProfile;
using quadfield::QuadInt;

// ---------------------------------------------------------------------------
// Prime classes entering the parity criterion (fields Q(sqrt(-6)), Q(sqrt(6)))
// ---------------------------------------------------------------------------

enum class PrimeClassKind { P1, P2, P3, Neutral };

inline const char* to_string(PrimeClassKind k) {
  switch (k) {
    case PrimeClassKind::P1: return "P1";
    case PrimeClassKind::P2: return "P2";
    case PrimeClassKind::P3: return "P3";
    case PrimeClassKind::Neutral: return "Neutral";
  }
  return "?";
}

inline void require_supported_field(long long m) {
  if (m != -6 && m != 6)
    throw DomainError("decision criterion is implemented for m = -6 and m = 6");
}

// Class of an odd prime p not dividing 6, by the residue symbols
// (-1/p), (m/p), (2/p) and, for P3, the quartic character of 2.
inline PrimeClassKind prime_class(long long field_m, const Int& p) {
  require_supported_field(field_m);
  if (!arith::is_prime(p) || p < 2)
    throw DomainError("prime_class: p must be a positive prime");
  if (p == 2 || p == 3)
    throw DomainError("prime_class: p must not divide 6");
  int j1 = arith::jacobi(Int(-1), p);
  int jm = arith::jacobi(Int(field_m), p);
  int j2 = arith::jacobi(Int(2), p);
  if (j1 == 1 && jm == 1 && j2 == -1) return PrimeClassKind::P1;
  if (j1 == 1 && jm == -1 && j2 == -1) return PrimeClassKind::P2;
  if (j1 == 1 && jm == 1 && j2 == 1) {
    // Here p = 1 mod 8, so the quartic symbol of 2 is defined.
    if (arith::quartic2(p) == -1) return PrimeClassKind::P3;
  }
  return PrimeClassKind::Neutral;
}

// ---------------------------------------------------------------------------
// The parity invariant
// ---------------------------------------------------------------------------

// Signed residue class of the 3-free part of the rational coordinate:
// a1 mod 8 in {1, 3, 5, 7} encoded as {1, 3, -3, -1}.
inline int a1_class(const Int& a1) {
  long long r = arith::mod_floor(a1, 8).convert_to<long long>();
  switch (r) {
    case 1: return 1;
    case 3: return 3;
    case 5: return -3;
    case 7: return -1;
  }
  throw DomainError("a1_class: argument must be odd");
}

// Sum (mod 2) of: half the 2-adic exponent of the norm, half the exponents at
// P2 primes, the exponents at P3 primes, and — for the real field only — the
// 3-adic exponent of the rational coordinate. The real-field term is forced
// by alpha = 3 in Z[sqrt(6)]: it is everywhere locally solvable, and without
// the term the parity test would call it solvable, but x1^2 + y1^2 +
// 6*(x2^2 + y2^2) = 3 has no solutions. The imaginary field must not carry
// the term (3 = (sqrt(-6))^2 + 3^2 there). Both choices are exhaustively
// cross-checked against the oracle by the scan tests.
inline int parity_sum(const NormProfile& pr, long long field_m) {
  require_supported_field(field_m);
  if (pr.s1 % 2 != 0)
    throw CheckError("parity_sum: odd 2-adic exponent for a locally solvable element");
  unsigned total = pr.s1 / 2;
  if (field_m == 6) total += pr.s3;
  for (const auto& [p, e] : pr.odd_primes) {
    PrimeClassKind k = prime_class(field_m, p);
    if (k == PrimeClassKind::P2) {
      if (e % 2 != 0)
        throw CheckError("parity_sum: odd exponent at an inert P2 prime");
      total += e / 2;
    } else if (k == PrimeClassKind::P3) {
      total += e;
    }
  }
  return static_cast<int>(total % 2);
}

// ---------------------------------------------------------------------------
// The decision procedure
// ---------------------------------------------------------------------------

enum class Verdict { Solvable, Unsolvable, UnknownByCriterion };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Solvable: return "Solvable";
    case Verdict::Unsolvable: return "Unsolvable";
    case Verdict::UnknownByCriterion: return "UnknownByCriterion";
  }
  return "?";
}

struct Decision {
  Verdict verdict = Verdict::UnknownByCriterion;
  std::vector<std::string> reasons;
};

inline const std::vector<long long>& default_fallback_bounds() {
  static const std::vector<long long> b{10, 50, 200, 500};
  return b;
}

// Is alpha a sum of two squares of Z[sqrt(m)], m in {-6, 6}?
//
// Order of evaluation: local solvability at every relevant place; then the
// rational-coordinate-zero fallback (exhaustive search, since the parity
// invariant needs the 3-free part of that coordinate); then the prime-class
// criterion: a P1 prime in the norm forces solvability, an even 3-free part
// forces solvability, and otherwise the parity sum against the class of the
// 3-free part decides.
inline Decision decide(
    const FieldSpec& f, const QuadInt& alpha,
    const std::vector<long long>& fallback_bounds = default_fallback_bounds()) {
  require_supported_field(f.m);
  if (alpha.m != f.m) throw DomainError("decide: field mismatch");
  if (quadfield::is_zero(alpha))
    throw DomainError("decide: alpha must be nonzero");

  Decision out;
  auto local = localsolve::locally_solvable_everywhere(f, alpha);
  if (!local.solvable) {
    out.verdict = Verdict::Unsolvable;
    for (const auto& v : local.verdicts) {
      if (!v.solvable) {
        out.reasons.push_back("LOCAL_FAIL(" +
                              (v.archimedean ? std::string("real")
                                             : v.prime.str()) +
                              ")");
        break;
      }
    }
    return out;
  }

  if (alpha.a == 0) {
    out.reasons.emplace_back("A_ZERO_FALLBACK");
    for (long long b : fallback_bounds) {
      if (oracle::brute_force(f, alpha, b)) {
        out.verdict = Verdict::Solvable;
        return out;
      }
    }
    out.verdict = Verdict::UnknownByCriterion;
    return out;
  }

  NormProfile pr = quadfield::norm_profile(f, alpha);
  for (const auto& [p, e] : pr.odd_primes) {
    if (prime_class(f.m, p) == PrimeClassKind::P1) {
      out.verdict = Verdict::Solvable;
      out.reasons.push_back("P1_NONEMPTY(" + p.str() + ")");
      return out;
    }
  }

  if (pr.a1 % 2 == 0) {
    out.verdict = Verdict::Solvable;
    out.reasons.emplace_back("A1_EVEN");
    return out;
  }

  int sum = parity_sum(pr, f.m);
  int cls = a1_class(pr.a1);
  int need;
  if (f.m == -6) {
    need = (cls == 1 || cls == 3) ? 0 : 1;
  } else {
    need = (cls == 1 || cls == -1) ? 0 : 1;
  }
  out.verdict = sum == need ? Verdict::Solvable : Verdict::Unsolvable;
  out.reasons.push_back("PARITY(" + std::to_string(sum) + "," +
                        std::to_string(cls) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// Which structural results cover a given field
// ---------------------------------------------------------------------------

struct TheoremTag {
  std::string tag;
  std::optional<long long> param;
  bool operator==(const TheoremTag& o) const {
    return tag == o.tag && param == o.param;
  }
};

inline std::vector<TheoremTag> applicable_results(long long m) {
  FieldSpec f(m);  // validates the radicand
  std::vector<TheoremTag> out;
  if (m < 0) {
    Int d(-m);
    if (pell::solve_eq2(d))
      out.push_back({"PropIma_case1", std::nullopt});
    if (!localsolve::eq1_locally_solvable(d))
      out.push_back({"PropIma_case2", std::nullopt});
    for (const auto& w : classify_D(d))
      out.push_back({"Thm01", w.p.convert_to<long long>()});
    if (d % 2 == 0) {
      long long d0 = (-m) / 2;
      if (arith::mod_floor_ll(d0, 4) == 3) out.push_back({"PropMinus2p", d0});
    }
  } else {
    if (m % 2 == 0) {
      Int p(m / 2);
      if (arith::is_prime(p) && arith::mod_floor(p, 8) == 3)
        out.push_back({"Thm02", m / 2});
    }
  }
  if (out.empty()) out.push_back({"Unclassified", std::nullopt});
  return out;
}

}  // namespace criteria
}  // namespace quadsq

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quadsq/arith.hpp"
#include "quadsq/dsets.hpp"
#include "quadsq/errors.hpp"
#include "quadsq/quadfield.hpp"

namespace quadsq {
namespace pell {

using quadfield::QuadInt;

// ---------------------------------------------------------------------------
// Continued fraction of sqrt(D)
// ---------------------------------------------------------------------------

struct CfExpansion {
  Int a0;                   // floor(sqrt(D))
  std::vector<Int> period;  // the periodic part, ending with 2*a0
};

inline CfExpansion cf_sqrt(const Int& D) {
  if (D < 2) throw DomainError("cf_sqrt: D must be >= 2");
  Int a0 = arith::isqrt(D);
  if (a0 * a0 == D) throw DomainError("cf_sqrt: D must not be a perfect square");
  CfExpansion out;
  out.a0 = a0;
  Int P = 0, Q = 1, a = a0;
  while (true) {
    P = a * Q - P;
    Q = (D - P * P) / Q;
    a = (a0 + P) / Q;
    out.period.push_back(a);
    if (Q == 1 && a == 2 * a0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fundamental unit of the order Z[sqrt(D)]
// ---------------------------------------------------------------------------

struct UnitInfo {
  QuadInt eps;        // x + y*sqrt(D), the fundamental unit > 1
  int unit_norm = 1;  // norm(eps) = +-1
};

inline UnitInfo fundamental_unit(const Int& D) {
  CfExpansion cf = cf_sqrt(D);
  size_t ell = cf.period.size();
  // Convergent h_{ell-1}/k_{ell-1} of [a0; period...] gives the unit.
  Int h0 = 1, h1 = cf.a0;  // h_{-1}, h_0
  Int k0 = 0, k1 = 1;      // k_{-1}, k_0
  for (size_t i = 0; i + 1 < ell; ++i) {
    const Int& t = cf.period[i];
    Int h2 = t * h1 + h0;
    Int k2 = t * k1 + k0;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
  }
  UnitInfo out;
  out.eps = QuadInt{h1, k1, D.convert_to<long long>()};
  out.unit_norm = (ell % 2 == 0) ? 1 : -1;
  Int nrm = h1 * h1 - D * k1 * k1;
  check(nrm == out.unit_norm, "fundamental_unit: norm mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// x^2 - D y^2 = N for |N| in {1, 2}
// ---------------------------------------------------------------------------

struct PellSolution {
  Int x;  // >= 0
  Int y;  // >= 1
};

// Minimal-y solution, if one exists. For D >= 5 every solution with |N| = 1, 2
// (forcing gcd(x, y) = 1) appears among the convergents of sqrt(D); for
// D <= 4, where |N| = 2 >= sqrt(D), a direct scan of y covers the gap.
inline std::optional<PellSolution> solve_small_norm(
    const Int& D, const Int& N, long long direct_scan_bound = 1000000) {
  if (N != 1 && N != -1 && N != 2 && N != -2)
    throw DomainError("solve_small_norm: |N| must be 1 or 2");
  CfExpansion cf = cf_sqrt(D);  // validates D
  if (D <= 4) {
    for (long long y = 1; y <= direct_scan_bound; ++y) {
      Int x2 = N + D * y * y;
      if (x2 >= 0 && arith::is_square(x2))
        return PellSolution{arith::isqrt(x2), Int(y)};
    }
    return std::nullopt;
  }
  size_t ell = cf.period.size();
  Int h0 = 1, h1 = cf.a0;
  Int k0 = 0, k1 = 1;
  if (h1 * h1 - D * k1 * k1 == N) return PellSolution{h1, k1};
  for (size_t i = 0; i < 2 * ell; ++i) {
    const Int& t = cf.period[i % ell];
    Int h2 = t * h1 + h0;
    Int k2 = t * k1 + k0;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
    if (h1 * h1 - D * k1 * k1 == N) return PellSolution{h1, k1};
  }
  return std::nullopt;
}

// x^2 - d y^2 = -gamma(d): the norm equation controlling whether -1 is a sum
// of two squares in the maximal order of Q(sqrt(-d)) at the global level.
inline std::optional<PellSolution> solve_eq2(const Int& d) {
  int g = criteria::gamma(d);
  if (arith::is_square(d)) throw DomainError("solve_eq2: d must not be a square");
  return solve_small_norm(d, Int(-g));
}

// ---------------------------------------------------------------------------
// Eta decomposition for D = 2d, d odd squarefree
// ---------------------------------------------------------------------------

struct EtaInfo {
  bool exists = false;  // false when x^2 - D y^2 = +-2 has no solution
  QuadInt omega;        // minimal solution of x^2 - D y^2 = +-2
  int omega_norm = 0;   // the sign attained (-2 preferred when both exist)
  QuadInt eta;          // omega^2 / 2, a totally positive unit
  int i0 = 0;           // eta = eps^{i0} for the fundamental unit eps
};

inline EtaInfo eta_decomposition(const Int& D) {
  if (D < 2 || D % 2 != 0)
    throw DomainError("eta_decomposition: D must be even and >= 2");
  Int d = D / 2;
  if (d % 2 == 0)
    throw DomainError("eta_decomposition: D/2 must be odd");
  auto fac = arith::factorize(d);
  for (const auto& [p, e] : fac.factors) {
    if (e > 1) throw DomainError("eta_decomposition: D/2 must be squarefree");
  }

  EtaInfo out;
  int sign = -2;
  auto sol = solve_small_norm(D, Int(-2));
  if (!sol) {
    sign = 2;
    sol = solve_small_norm(D, Int(2));
  }
  if (!sol) return out;

  long long Dm = D.convert_to<long long>();
  out.exists = true;
  out.omega = QuadInt{sol->x, sol->y, Dm};
  out.omega_norm = sign;

  Int ea2 = sol->x * sol->x + D * sol->y * sol->y;
  check(ea2 % 2 == 0, "eta_decomposition: omega^2 has odd rational part");
  out.eta = QuadInt{ea2 / 2, sol->x * sol->y, Dm};
  check(quadfield::norm(out.eta) == 1, "eta_decomposition: eta is not a unit");

  UnitInfo u = fundamental_unit(D);
  QuadInt cur{1, 0, Dm};
  bool found = false;
  for (int i = 0; i <= 64; ++i) {
    if (cur == out.eta) {
      out.i0 = i;
      found = true;
      break;
    }
    cur = quadfield::mul(cur, u.eps);
  }
  check(found, "eta_decomposition: eta is not a small power of the fundamental unit");
  return out;
}

}  // namespace pell
}  // namespace quadsq

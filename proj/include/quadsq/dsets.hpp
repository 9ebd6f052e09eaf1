#pragma once

#include <string>
#include <vector>

#include "quadsq/arith.hpp"
#include "quadsq/errors.hpp"

namespace quadsq {
namespace criteria {

// gamma(d) = 2 when -d = 1 (mod 4) (so that sqrt(-d) generates an index-2
// suborder of the maximal order), else 1.
inline int gamma(const Int& d) {
  if (d < 2) throw DomainError("gamma: d must be >= 2");
  return arith::mod_floor(d, 4) == 3 ? 2 : 1;
}

// Congruence families of prime divisors of d that force x^2 + y^2 = -1 to be
// insolvable in Z[sqrt(-d)] for global (Brauer-Manin) reasons.
enum class DClass { D1, D2, D3 };

inline const char* to_string(DClass c) {
  switch (c) {
    case DClass::D1: return "D1";
    case DClass::D2: return "D2";
    case DClass::D3: return "D3";
  }
  return "?";
}

struct DMembership {
  Int p;
  DClass cls;
  bool operator==(const DMembership& o) const {
    return p == o.p && cls == o.cls;
  }
};

// All prime divisors p of d witnessing one of the three families:
//   D1: d != -1 (mod 8) and p = -1 (mod 8)
//   D2: d =  1 or 2 (mod 4) and p = 3 (mod 8)
//   D3: d =  3 (mod 8) and p = 5 (mod 8)
// d must be a squarefree integer >= 2.
inline std::vector<DMembership> classify_D(const Int& d) {
  if (d < 2) throw DomainError("classify_D: d must be >= 2");
  auto fac = arith::factorize(d);
  for (const auto& [p, e] : fac.factors) {
    if (e > 1) throw DomainError("classify_D: d must be squarefree");
  }
  Int d8 = arith::mod_floor(d, 8);
  Int d4 = arith::mod_floor(d, 4);
  std::vector<DMembership> out;
  for (const auto& [p, e] : fac.factors) {
    Int p8 = arith::mod_floor(p, 8);
    if (d8 != 7 && p8 == 7) out.push_back({p, DClass::D1});
    else if ((d4 == 1 || d4 == 2) && p8 == 3) out.push_back({p, DClass::D2});
    else if (d8 == 3 && p8 == 5) out.push_back({p, DClass::D3});
  }
  return out;
}

}  // namespace criteria
}  // namespace quadsq

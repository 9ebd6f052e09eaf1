#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quadsq/errors.hpp"

namespace quadsq {

using Int = boost::multiprecision::cpp_int;

namespace arith {

// ---------------------------------------------------------------------------
// Basic integer helpers
// ---------------------------------------------------------------------------

// Mathematical (non-negative) residue of a mod n, n > 0.
inline Int mod_floor(const Int& a, const Int& n) {
  Int r = a % n;
  if (r < 0) r += n;
  return r;
}

inline long long mod_floor_ll(long long a, long long n) {
  long long r = a % n;
  if (r < 0) r += n;
  return r;
}

// Floor integer square root of n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw DomainError("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

// Exponent of p in n (n != 0, p >= 2).
inline unsigned ord_at(Int n, const Int& p) {
  if (n == 0) throw DomainError("ord_at: zero argument");
  if (p < 2) throw DomainError("ord_at: base must be >= 2");
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

// b^e mod n with a mathematical (non-negative) result; n > 0.
inline Int mod_pow(const Int& b, const Int& e, const Int& n) {
  if (n <= 0) throw DomainError("mod_pow: modulus must be positive");
  if (e < 0) throw DomainError("mod_pow: negative exponent");
  if (n == 1) return 0;
  return boost::multiprecision::powm(mod_floor(b, n), e, n);
}

// Modular inverse of a mod n (gcd(a, n) == 1, n > 0), via extended gcd.
inline Int mod_inverse(const Int& a, const Int& n) {
  if (n <= 0) throw DomainError("mod_inverse: modulus must be positive");
  Int r0 = n, r1 = mod_floor(a, n);
  Int t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Int t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw DomainError("mod_inverse: arguments are not coprime");
  return mod_floor(t0, n);
}

// ---------------------------------------------------------------------------
// Primality (deterministic Miller-Rabin for the practical range)
// ---------------------------------------------------------------------------

inline bool is_prime(const Int& n_in) {
  Int n = boost::multiprecision::abs(n_in);
  if (n < 2) return false;
  static const int small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47};
  for (int p : small_primes) {
    if (n % p == 0) return n == p;
  }
  Int d = n - 1;
  unsigned r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  // Deterministic for n < 3.3e24; a strong probabilistic test beyond that.
  for (int a : small_primes) {
    Int x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 0; i + 1 < r; ++i) {
      x = (x * x) % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// All primes < limit, by sieve.
inline std::vector<long long> primes_below(long long limit) {
  std::vector<long long> out;
  if (limit <= 2) return out;
  std::vector<bool> comp(static_cast<size_t>(limit), false);
  for (long long i = 2; i < limit; ++i) {
    if (!comp[static_cast<size_t>(i)]) {
      out.push_back(i);
      for (long long j = i * i; j < limit; j += i) comp[static_cast<size_t>(j)] = true;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorization: trial division + Brent's rho for stubborn cofactors
// ---------------------------------------------------------------------------

struct Factorization {
  int sign = 1;                                   // -1, 0, or +1
  std::vector<std::pair<Int, unsigned>> factors;  // sorted by prime, exps >= 1
};

namespace detail {

inline const std::vector<long long>& trial_primes() {
  static const std::vector<long long> table = primes_below(100000);
  return table;
}

inline unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                                     unsigned long long n) {
  return static_cast<unsigned long long>(
      static_cast<unsigned __int128>(a) * b % n);
}

// Brent's cycle-finding variant of Pollard rho for 64-bit composites.
inline unsigned long long rho_u64(unsigned long long n) {
  if (n % 2 == 0) return 2;
  for (unsigned long long c = 1;; ++c) {
    unsigned long long x = 2, y = 2, d = 1;
    unsigned long long saved_y = 2;
    unsigned long long r = 1, q = 1;
    while (d == 1) {
      x = y;
      for (unsigned long long i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
      for (unsigned long long k = 0; k < r && d == 1; k += 128) {
        saved_y = y;
        unsigned long long lim = std::min<unsigned long long>(128, r - k);
        for (unsigned long long i = 0; i < lim; ++i) {
          y = (mulmod_u64(y, y, n) + c) % n;
          unsigned long long diff = x > y ? x - y : y - x;
          q = mulmod_u64(q, diff == 0 ? 1 : diff, n);
        }
        d = std::__gcd(q, n);
      }
      r *= 2;
    }
    if (d == n) {
      // Backtrack one step at a time.
      d = 1;
      unsigned long long y2 = saved_y;
      while (d == 1) {
        y2 = (mulmod_u64(y2, y2, n) + c) % n;
        unsigned long long diff = x > y2 ? x - y2 : y2 - x;
        if (diff == 0) break;
        d = std::__gcd(diff, n);
      }
    }
    if (d != 1 && d != n) return d;
  }
}

// Pollard rho on arbitrary-precision integers (rarely needed).
inline Int rho_big(const Int& n) {
  if (n % 2 == 0) return 2;
  for (Int c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = boost::multiprecision::gcd(boost::multiprecision::abs(x - y), n);
    }
    if (d != n) return d;
  }
}

inline void factor_rec(const Int& n, std::map<Int, unsigned>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++acc[n];
    return;
  }
  Int d;
  if (n <= Int(std::numeric_limits<long long>::max())) {
    d = Int(rho_u64(n.convert_to<unsigned long long>()));
  } else {
    d = rho_big(n);
  }
  factor_rec(d, acc);
  factor_rec(n / d, acc);
}

}  // namespace detail

inline Factorization factorize(const Int& n_in) {
  Factorization out;
  if (n_in == 0) {
    out.sign = 0;
    return out;
  }
  out.sign = n_in < 0 ? -1 : 1;
  Int n = boost::multiprecision::abs(n_in);
  std::map<Int, unsigned> acc;
  for (long long p : detail::trial_primes()) {
    if (Int(p) * p > n) break;
    while (n % p == 0) {
      n /= p;
      ++acc[Int(p)];
    }
  }
  if (n > 1) {
    if (is_prime(n)) {
      ++acc[n];
    } else {
      detail::factor_rec(n, acc);
    }
  }
  out.factors.assign(acc.begin(), acc.end());
  return out;
}

// ---------------------------------------------------------------------------
// Residue symbols
// ---------------------------------------------------------------------------

// Jacobi symbol (a/n) for odd n >= 1; 0 when gcd(a, n) > 1.
inline int jacobi(const Int& a_in, const Int& n_in) {
  if (n_in < 1 || n_in % 2 == 0)
    throw DomainError("jacobi: lower argument must be a positive odd integer");
  Int a = mod_floor(a_in, n_in);
  Int n = n_in;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long r = (n % 8).convert_to<long long>();
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Rational quartic residue symbol of 2 modulo a prime p = 1 (mod 8):
// +1 when 2 is a fourth power mod p, -1 otherwise (2 is always a square here).
inline int quartic2(const Int& p) {
  if (!is_prime(p) || mod_floor(p, 8) != 1)
    throw DomainError("quartic2: argument must be a prime congruent to 1 mod 8");
  Int v = mod_pow(2, (p - 1) / 4, p);
  if (v == 1) return 1;
  if (v == p - 1) return -1;
  throw CheckError("quartic2: 2^((p-1)/4) was not a square root of 1");
}

}  // namespace arith
}  // namespace quadsq

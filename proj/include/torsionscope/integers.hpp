#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "torsionscope/errors.hpp"

namespace torsionscope {

/// Exact arbitrary-precision integer. All homological linear algebra runs on
/// this type; there is deliberately no fixed-width fast path.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, used for homology coefficients over the rationals.
using Rational = boost::multiprecision::cpp_rational;

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int abs_int(const Int& a) { return boost::multiprecision::abs(a); }

/// Quotient nearest to a/b (ties rounded toward zero). Used by the SNF pivot
/// reduction so remainders satisfy |r| <= |b|/2.
inline Int round_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  Int r = a - q * b;
  if (abs_int(r) * 2 > abs_int(b)) {
    q += ((a < 0) == (b < 0)) ? 1 : -1;
  }
  return q;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers. The fixed witness set is
/// known to be exact for all n < 3.3e24, which covers the full u64 range.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t pollard_rho_u64(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      std::uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

inline void factor_u64_into(std::uint64_t n, std::set<std::uint64_t>& out) {
  if (n < 2) return;
  if (is_prime_u64(n)) {
    out.insert(n);
    return;
  }
  std::uint64_t d = pollard_rho_u64(n);
  factor_u64_into(d, out);
  factor_u64_into(n / d, out);
}

}  // namespace detail

/// Distinct prime factors of |n|. Trial division over a small wheel first,
/// then deterministic Miller-Rabin plus Pollard rho on the cofactor. The
/// divisors arising from {-1,0,1} boundary matrices are tiny, so the u64
/// range is ample; larger cofactors are rejected rather than guessed at.
inline std::set<std::uint64_t> prime_factors(const Int& value) {
  std::set<std::uint64_t> out;
  Int n = abs_int(value);
  if (n <= 1) return out;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
    if (n % p == 0) {
      out.insert(p);
      while (n % p == 0) n /= p;
    }
  }
  static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t f = 7;
  int w = 0;
  while (f <= 1000000ULL && Int(f) * f <= n) {
    if (n % f == 0) {
      out.insert(f);
      while (n % f == 0) n /= f;
    }
    f += wheel[w];
    w = (w + 1) & 7;
  }
  if (n > 1) {
    if (n > Int(std::numeric_limits<std::uint64_t>::max())) {
      throw DomainError("prime factor search: cofactor exceeds 64 bits");
    }
    detail::factor_u64_into(n.convert_to<std::uint64_t>(), out);
  }
  return out;
}

}  // namespace torsionscope

#pragma once

#include <cstdint>

#include "torsionscope/errors.hpp"
#include "torsionscope/integers.hpp"

namespace torsionscope {

/// Coefficient field for homology: the rationals or Z_p for a prime p.
class FieldSpec {
 public:
  enum class Kind { rationals, prime_field };

  static FieldSpec rationals() { return FieldSpec(Kind::rationals, 0); }

  static FieldSpec prime_field(std::uint64_t p) {
    if (!is_prime_u64(p)) throw DomainError("prime_field modulus is not prime");
    return FieldSpec(Kind::prime_field, p);
  }

  Kind kind() const { return kind_; }
  std::uint64_t prime() const { return p_; }

  bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }

 private:
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// Exact rational arithmetic for the elimination kernels.
struct RationalField {
  using Elem = Rational;
  Elem from_int(long long v) const { return Rational(v); }
  Elem from_integer(const Int& v) const { return Rational(v); }
  bool is_zero(const Elem& e) const { return e == 0; }
  Elem neg(const Elem& e) const { return -e; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
};

/// Z_p arithmetic on 64-bit residues (products via 128-bit intermediates).
class PrimeFieldOps {
 public:
  using Elem = std::uint64_t;

  explicit PrimeFieldOps(std::uint64_t p) : p_(p) {
    if (!is_prime_u64(p)) throw DomainError("prime_field modulus is not prime");
  }

  std::uint64_t modulus() const { return p_; }

  Elem from_int(long long v) const {
    if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
    const std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
    const std::uint64_t r = mag % p_;
    return r == 0 ? 0 : p_ - r;
  }
  Elem from_integer(const Int& v) const {
    Int r = v % Int(p_);
    if (r < 0) r += Int(p_);
    return r.convert_to<std::uint64_t>();
  }
  bool is_zero(const Elem& e) const { return e == 0; }
  Elem neg(const Elem& e) const { return e == 0 ? 0 : p_ - e; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= p_ || s < a) s -= p_;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const { return detail::mulmod_u64(a, b, p_); }
  Elem div(const Elem& a, const Elem& b) const {
    if (b == 0) throw DomainError("division by zero in prime field");
    return mul(a, detail::powmod_u64(b, p_ - 2, p_));
  }

 private:
  std::uint64_t p_;
};

}  // namespace torsionscope

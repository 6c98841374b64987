#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>

#include "tiltkit/error.hpp"

namespace tiltkit {

/// The base field: the rationals or a prime field GF(p) with p < 2^31.
struct FieldSpec {
  enum class Kind { rationals, prime };

  Kind kind = Kind::rationals;
  std::uint32_t characteristic = 0;

  static FieldSpec rationals() { return {}; }

  static FieldSpec prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
      throw InputError("field characteristic must be a prime below 2^31, got " +
                       std::to_string(p));
    }
    return {Kind::prime, static_cast<std::uint32_t>(p)};
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  bool is_rational() const { return kind == Kind::rationals; }

  std::string name() const {
    return is_rational() ? std::string("Q") : "GF(" + std::to_string(characteristic) + ")";
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// An exact field element.
///
/// Rationals are GMP fractions, always in lowest terms. Prime-field elements
/// carry their modulus. A default or integer-constructed value is a rational
/// "literal"; it is reduced into GF(p) the first time it meets a GF(p)
/// operand, so generic code can write `Scalar(1)` without knowing the field.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)

  static Scalar rational(const mpq_class& q) {
    Scalar s;
    mpq_class c = q;
    c.canonicalize();
    s.value_ = std::move(c);
    return s;
  }

  static Scalar residue(std::uint64_t r, std::uint32_t p) {
    Scalar s;
    s.modulus_ = p;
    s.value_ = static_cast<std::uint32_t>(r % p);
    return s;
  }

  static Scalar from_rational(const mpq_class& q, const FieldSpec& f) {
    Scalar s = rational(q);
    return f.is_rational() ? s : s.reduce(f.characteristic);
  }

  static Scalar from_int(long v, const FieldSpec& f) { return from_rational(mpq_class(v), f); }

  static Scalar zero(const FieldSpec& f) { return from_int(0, f); }
  static Scalar one(const FieldSpec& f) { return from_int(1, f); }

  /// 0 for rationals and unbound literals, p for GF(p) elements.
  std::uint32_t modulus() const { return modulus_; }

  bool is_zero() const {
    if (modulus_ != 0) return std::get<std::uint32_t>(value_) == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }

  bool is_one() const {
    if (modulus_ != 0) return std::get<std::uint32_t>(value_) == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  /// Rational value; only valid when modulus() == 0.
  const mpq_class& as_rational() const { return std::get<mpq_class>(value_); }

  std::uint32_t as_residue() const { return std::get<std::uint32_t>(value_); }

  /// Reinterprets this value in GF(p).
  Scalar reduce(std::uint32_t p) const {
    if (modulus_ == p) return *this;
    if (modulus_ != 0) throw InternalError("mixing elements of different prime fields");
    const mpq_class& q = std::get<mpq_class>(value_);
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw InputError("rational value has denominator divisible by the characteristic");
    std::uint64_t n = num.get_ui();
    std::uint64_t d = den.get_ui();
    return residue(n * inverse_mod(d, p) % p, p);
  }

  Scalar in_field(const FieldSpec& f) const {
    if (f.is_rational()) {
      if (modulus_ != 0) throw InternalError("prime-field element used over Q");
      return *this;
    }
    return reduce(f.characteristic);
  }

  Scalar operator-() const {
    if (modulus_ != 0) {
      auto r = std::get<std::uint32_t>(value_);
      return residue(r == 0 ? 0 : modulus_ - r, modulus_);
    }
    return rational(-std::get<mpq_class>(value_));
  }

  Scalar inverse() const {
    if (is_zero()) throw InternalError("division by zero");
    if (modulus_ != 0) return residue(inverse_mod(std::get<std::uint32_t>(value_), modulus_), modulus_);
    mpq_class q = 1 / std::get<mpq_class>(value_);
    return rational(q);
  }

  Scalar& operator+=(const Scalar& o) { return *this = binary(*this, o, Op::add); }
  Scalar& operator-=(const Scalar& o) { return *this = binary(*this, o, Op::sub); }
  Scalar& operator*=(const Scalar& o) { return *this = binary(*this, o, Op::mul); }
  Scalar& operator/=(const Scalar& o) { return *this = binary(*this, o.inverse(), Op::mul); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return binary(a, b, Op::add); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return binary(a, b, Op::sub); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return binary(a, b, Op::mul); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return binary(a, b.inverse(), Op::mul); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

  std::string str() const {
    if (modulus_ != 0) return std::to_string(std::get<std::uint32_t>(value_));
    return std::get<mpq_class>(value_).get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

  static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    // Fermat: a^(p-2) mod p
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint64_t e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }

 private:
  enum class Op { add, sub, mul };

  static Scalar binary(const Scalar& a, const Scalar& b, Op op) {
    if (a.modulus_ == 0 && b.modulus_ == 0) {
      const mpq_class& x = std::get<mpq_class>(a.value_);
      const mpq_class& y = std::get<mpq_class>(b.value_);
      Scalar s;
      switch (op) {
        case Op::add: s.value_ = mpq_class(x + y); break;
        case Op::sub: s.value_ = mpq_class(x - y); break;
        case Op::mul: s.value_ = mpq_class(x * y); break;
      }
      return s;
    }
    std::uint32_t p = a.modulus_ != 0 ? a.modulus_ : b.modulus_;
    std::uint64_t x = a.reduce(p).as_residue();
    std::uint64_t y = b.reduce(p).as_residue();
    switch (op) {
      case Op::add: return residue(x + y, p);
      case Op::sub: return residue(x + p - y, p);
      case Op::mul: return residue(x * y, p);
    }
    return {};
  }

  std::uint32_t modulus_ = 0;
  std::variant<mpq_class, std::uint32_t> value_;
};

/// Parses "3", "-2/5" into an element of `f`.
inline Scalar parse_scalar(const std::string& text, const FieldSpec& f) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw InputError("not a rational number: '" + text + "'");
  q.canonicalize();
  return Scalar::from_rational(q, f);
}

}  // namespace tiltkit

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace chaincomm {

/// The coefficient field: the rationals, or the prime field F_p for a
/// word-size prime p (p < 2^32, so products of residues fit in 64 bits).
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is a prime below 2^32.
  static FieldSpec prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::PrimeField; }
  /// Zero for the rationals.
  std::uint64_t modulus() const { return modulus_; }
  /// Number of elements, absent for the rationals.
  std::optional<std::uint64_t> size() const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;
  FieldSpec(Kind k, std::uint64_t p) : kind_(k), modulus_(p) {}
  Kind kind_;
  std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n);

/// Exact field element. Rationals are kept as reduced GMP fractions and
/// residues as their canonical representative in [0, p), so structural
/// equality is field equality.
class Scalar {
 public:
  static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
  static Scalar one(const FieldSpec& f) { return from_int(f, 1); }
  static Scalar from_int(const FieldSpec& f, std::int64_t n);
  /// Rationals only.
  static Scalar from_rational(const mpq_class& q);
  /// Residue of a non-negative integer already known to lie in [0, p).
  static Scalar residue(std::uint32_t value, std::uint32_t modulus);

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Canonical residue; throws std::logic_error over the rationals.
  std::uint32_t residue_value() const;
  /// Throws std::logic_error over F_p.
  const mpq_class& rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws std::domain_error on division by zero.
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "a/b" or "a" for rationals, decimal residue for F_p.
  std::string to_string() const;

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  explicit Scalar(Residue r) : value_(r) {}

  const Residue& same_field_residue(const Scalar& o) const;

  std::variant<mpq_class, Residue> value_;
};

}  // namespace chaincomm

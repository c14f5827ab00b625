#include "chaincomm/scalar.hpp"

#include <limits>
#include <stdexcept>

namespace chaincomm {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("modulus " + std::to_string(p) + " exceeds 32 bits");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return FieldSpec(Kind::PrimeField, p);
}

std::optional<std::uint64_t> FieldSpec::size() const {
  if (kind_ == Kind::Rationals) return std::nullopt;
  return modulus_;
}

std::string FieldSpec::to_string() const {
  if (kind_ == Kind::Rationals) return "Q";
  return "F" + std::to_string(modulus_);
}

Scalar Scalar::from_int(const FieldSpec& f, std::int64_t n) {
  if (f.kind() == FieldSpec::Kind::Rationals) return Scalar(mpq_class(static_cast<long>(n)));
  const auto p = static_cast<std::int64_t>(f.modulus());
  auto r = n % p;
  if (r < 0) r += p;
  return Scalar(Residue{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(p)});
}

Scalar Scalar::from_rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return Scalar(std::move(c));
}

Scalar Scalar::residue(std::uint32_t value, std::uint32_t modulus) {
  if (modulus == 0 || value >= modulus) throw std::invalid_argument("residue out of range");
  return Scalar(Residue{value, modulus});
}

FieldSpec Scalar::field() const {
  if (std::holds_alternative<mpq_class>(value_)) return FieldSpec::rationals();
  return FieldSpec(FieldSpec::Kind::PrimeField, std::get<Residue>(value_).modulus);
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  return std::get<Residue>(value_).value == 0;
}

bool Scalar::is_one() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
  return std::get<Residue>(value_).value == 1;
}

std::uint32_t Scalar::residue_value() const {
  if (auto* r = std::get_if<Residue>(&value_)) return r->value;
  throw std::logic_error("residue_value on a rational scalar");
}

const mpq_class& Scalar::rational() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw std::logic_error("rational() on a residue");
}

const Scalar::Residue& Scalar::same_field_residue(const Scalar& o) const {
  const auto* mine = std::get_if<Residue>(&value_);
  const auto* theirs = std::get_if<Residue>(&o.value_);
  if (!mine || !theirs || mine->modulus != theirs->modulus)
    throw std::invalid_argument("scalar field mismatch");
  return *theirs;
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  const auto& r = std::get<Residue>(value_);
  return Scalar(Residue{r.value == 0 ? 0 : r.modulus - r.value, r.modulus});
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q += o.rational();
    return *this;
  }
  const auto& b = same_field_residue(o);
  auto& a = std::get<Residue>(value_);
  std::uint64_t s = std::uint64_t{a.value} + b.value;
  if (s >= a.modulus) s -= a.modulus;
  a.value = static_cast<std::uint32_t>(s);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q -= o.rational();
    return *this;
  }
  const auto& b = same_field_residue(o);
  auto& a = std::get<Residue>(value_);
  std::uint64_t s = std::uint64_t{a.value} + a.modulus - b.value;
  if (s >= a.modulus) s -= a.modulus;
  a.value = static_cast<std::uint32_t>(s);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q *= o.rational();
    return *this;
  }
  const auto& b = same_field_residue(o);
  auto& a = std::get<Residue>(value_);
  a.value = static_cast<std::uint32_t>((std::uint64_t{a.value} * b.value) % a.modulus);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(1 / *q));
  const auto& r = std::get<Residue>(value_);
  // extended Euclid on (value, modulus)
  std::int64_t t = 0, new_t = 1;
  std::int64_t rem = r.modulus, new_rem = r.value;
  while (new_rem != 0) {
    const auto quot = rem / new_rem;
    t -= quot * new_t;
    std::swap(t, new_t);
    rem -= quot * new_rem;
    std::swap(rem, new_rem);
  }
  if (t < 0) t += r.modulus;
  return Scalar(Residue{static_cast<std::uint32_t>(t), r.modulus});
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (auto* q = std::get_if<mpq_class>(&a.value_)) return *q == std::get<mpq_class>(b.value_);
  const auto& x = std::get<Scalar::Residue>(a.value_);
  const auto& y = std::get<Scalar::Residue>(b.value_);
  return x.value == y.value && x.modulus == y.modulus;
}

std::string Scalar::to_string() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  return std::to_string(std::get<Residue>(value_).value);
}

}  // namespace chaincomm

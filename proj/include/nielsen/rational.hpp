#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace nielsen {

/// Exact rational number with 64-bit numerator and denominator.
/// Every operation is overflow-checked and throws std::overflow_error
/// instead of wrapping. Always stored in lowest terms with den > 0.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  /// Throws std::domain_error when the value is not an integer.
  std::int64_t to_integer() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "3", "-2/5".
  std::string to_string() const;

  /// Inverse of to_string.
  static Rational parse(const std::string& text);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

enum class CoefficientKind { integers, rationals, modular };

/// The commutative coefficient ring K of a group ring K[pi]: Z, Q or Z/m.
class CoefficientRing {
 public:
  static CoefficientRing integers() { return CoefficientRing(CoefficientKind::integers, 0); }
  static CoefficientRing rationals() { return CoefficientRing(CoefficientKind::rationals, 0); }
  /// Requires m >= 2.
  static CoefficientRing modular(std::int64_t m);

  CoefficientKind kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }

  /// Canonical representative of x in this ring. Z/m maps into [0, m);
  /// Z and Z/m reject non-integers.
  Rational normalize(const Rational& x) const;

  /// "Z", "Q", "Z/6".
  std::string name() const;
  static CoefficientRing parse(const std::string& name);

  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

 private:
  CoefficientRing(CoefficientKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

  CoefficientKind kind_ = CoefficientKind::integers;
  std::int64_t modulus_ = 0;
};

}  // namespace nielsen

#include "nielsen/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "nielsen/errors.hpp"

namespace nielsen {
namespace {

__int128 wide_gcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

std::int64_t Rational::to_integer() const {
  if (den_ != 1) throw std::domain_error("rational " + to_string() + " is not an integer");
  return num_;
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == 1 && rhs.den_ == 1) {
    std::int64_t out;
    if (__builtin_add_overflow(num_, rhs.num_, &out)) throw std::overflow_error("rational arithmetic overflow");
    num_ = out;
    return *this;
  }
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_,
                    static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (den_ == 1 && rhs.den_ == 1) {
    std::int64_t out;
    if (__builtin_mul_overflow(num_, rhs.num_, &out)) throw std::overflow_error("rational arithmetic overflow");
    num_ = out;
    return *this;
  }
  *this = from_wide(static_cast<__int128>(num_) * rhs.num_, static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_, static_cast<__int128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  try {
    auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t v = std::stoll(text, &used);
      if (used != text.size()) throw ParseError("bad rational: " + text);
      return Rational(v);
    }
    std::string a = text.substr(0, slash);
    std::string b = text.substr(slash + 1);
    std::int64_t n = std::stoll(a, &used);
    if (used != a.size()) throw ParseError("bad rational: " + text);
    std::int64_t d = std::stoll(b, &used);
    if (used != b.size() || d == 0) throw ParseError("bad rational: " + text);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw ParseError("bad rational: " + text);
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

CoefficientRing CoefficientRing::modular(std::int64_t m) {
  if (m < 2) throw ValidationError("modular coefficient ring needs modulus >= 2, got " + std::to_string(m));
  return CoefficientRing(CoefficientKind::modular, m);
}

Rational CoefficientRing::normalize(const Rational& x) const {
  switch (kind_) {
    case CoefficientKind::rationals:
      return x;
    case CoefficientKind::integers:
      if (!x.is_integer()) throw ValidationError("non-integer coefficient " + x.to_string() + " in Z");
      return x;
    case CoefficientKind::modular: {
      if (!x.is_integer()) throw ValidationError("non-integer coefficient " + x.to_string() + " in " + name());
      std::int64_t r = x.num() % modulus_;
      if (r < 0) r += modulus_;
      return Rational(r);
    }
  }
  return x;
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case CoefficientKind::integers:
      return "Z";
    case CoefficientKind::rationals:
      return "Q";
    case CoefficientKind::modular:
      return "Z/" + std::to_string(modulus_);
  }
  return "?";
}

CoefficientRing CoefficientRing::parse(const std::string& name) {
  if (name == "Z" || name == "integers") return integers();
  if (name == "Q" || name == "rationals") return rationals();
  if (name.rfind("Z/", 0) == 0) {
    try {
      return modular(std::stoll(name.substr(2)));
    } catch (const std::logic_error&) {
    }
  }
  throw ParseError("unknown coefficient ring '" + name + "'");
}

}  // namespace nielsen

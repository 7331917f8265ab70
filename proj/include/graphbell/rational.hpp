#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace graphbell {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number.
///
/// Thin value wrapper around boost's cpp_rational so that it composes with
/// Eigen dense types (boost's own number type drags its converting
/// constructors into Eigen's scalar promotion and breaks `scalar * matrix`).
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T n) : value_(static_cast<long long>(n)) {}
  Rational(const BigInt& n) : value_(n) {}
  Rational(const BigInt& numerator, const BigInt& denominator);
  Rational(long long numerator, long long denominator);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_integer() const { return denominator() == 1; }
  int sign() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  explicit operator double() const;
  double to_double() const { return static_cast<double>(*this); }

  /// "p/q" (or "p" when the denominator is one).
  std::string str() const;
  /// Parses "p", "-p", "p/q" and finite decimals such as "0.125".
  static Rational parse(std::string_view text);
  /// Exact value of a finite double.
  static Rational from_double(double value);

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  explicit Rational(boost::multiprecision::cpp_rational value) : value_(std::move(value)) {}
  boost::multiprecision::cpp_rational value_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

/// Least common multiple of denominators; used to scale rational data onto
/// integer hot loops.
BigInt common_denominator(const Rational* begin, const Rational* end);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued-fraction convergents and semiconvergents).
Rational approximate(double value, std::int64_t max_denominator);

/// True if r = s*s for some rational s; stores s (nonnegative) when so.
bool rational_sqrt(const Rational& r, Rational* root);

std::int64_t to_int64(const BigInt& value);

}  // namespace graphbell

namespace Eigen {
template <>
struct NumTraits<graphbell::Rational> : GenericNumTraits<graphbell::Rational> {
  using Real = graphbell::Rational;
  using NonInteger = graphbell::Rational;
  using Nested = graphbell::Rational;
  using Literal = graphbell::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

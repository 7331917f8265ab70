#include "graphbell/rational.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace graphbell {

namespace mp = boost::multiprecision;

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = denominator < 0 ? mp::cpp_rational(-numerator, -denominator) : mp::cpp_rational(numerator, denominator);
}

Rational::Rational(long long numerator, long long denominator)
    : Rational(BigInt(numerator), BigInt(denominator)) {}

BigInt Rational::numerator() const { return mp::numerator(value_); }
BigInt Rational::denominator() const { return mp::denominator(value_); }

int Rational::sign() const { return value_.sign(); }

Rational::operator double() const { return value_.convert_to<double>(); }

std::string Rational::str() const {
  auto num = numerator();
  auto den = denominator();
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto integer = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad integer");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad integer: " + std::string(s));
    std::string digits(s.front() == '+' ? s.substr(1) : s);
    return BigInt(digits);
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(integer(trim(text.substr(0, slash))), integer(trim(text.substr(slash + 1))));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    std::string digits(whole.empty() || whole == "-" || whole == "+" ? std::string(whole) + "0" : std::string(whole));
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt frac_value = frac.empty() ? BigInt(0) : integer(frac);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) throw std::invalid_argument("bad decimal");
    BigInt whole_value = integer(digits);
    BigInt num = whole_value * scale + (negative ? -frac_value : frac_value);
    return Rational(num, scale);
  }
  return Rational(integer(text));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite double");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(scaled);
  BigInt power = 1;
  power <<= std::abs(exponent);
  return exponent >= 0 ? r * Rational(power) : r / Rational(power);
}

Rational Rational::operator-() const { return Rational(mp::cpp_rational(-value_)); }
Rational& Rational::operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
Rational& Rational::operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
Rational& Rational::operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
  if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt common_denominator(const Rational* begin, const Rational* end) {
  BigInt l = 1;
  for (auto it = begin; it != end; ++it) {
    BigInt d = it->denominator();
    l = l / mp::gcd(l, d) * d;
  }
  return l;
}

Rational approximate(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value");
  if (max_denominator < 1) throw std::invalid_argument("denominator cap must be positive");
  // Convergents h/k of the continued fraction, with the best semiconvergent
  // considered once the cap is hit.
  long double x = value;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    long double a_ld = std::floor(rest);
    if (std::fabs(a_ld) > 1e15L) break;
    auto a = static_cast<long long>(a_ld);
    long long k2 = a * k1 + k0;
    if (k2 > max_denominator) {
      long long t = (max_denominator - k0) / k1;
      long long hs = t * h1 + h0, ks = t * k1 + k0;
      if (t > 0 && std::fabs(static_cast<long double>(hs) / ks - x) < std::fabs(static_cast<long double>(h1) / k1 - x))
        return Rational(hs, ks);
      break;
    }
    long long h2 = a * h1 + h0;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    long double frac = rest - a_ld;
    if (frac < 1e-18L) break;
    rest = 1.0L / frac;
  }
  return Rational(h1, k1);
}

bool rational_sqrt(const Rational& r, Rational* root) {
  if (r.sign() < 0) return false;
  BigInt n = r.numerator(), d = r.denominator();
  BigInt sn = mp::sqrt(n), sd = mp::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  if (root) *root = Rational(sn, sd);
  return true;
}

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer exceeds 64 bits");
  return value.convert_to<std::int64_t>();
}

}  // namespace graphbell

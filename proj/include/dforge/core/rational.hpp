#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "dforge/core/decimal.hpp"

namespace dforge {

/// Exact fraction, always in lowest terms with a positive denominator.
/// Used wherever weights are renormalized, since (1 - new) / (1 - old)
/// is not closed over terminating decimals.
class Rational {
 public:
  using Impl = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t integer) : value_(integer) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& numerator, const BigInt& denominator);
  explicit Rational(Impl value) : value_(std::move(value)) {}
  Rational(const ExactDecimal& d);  // NOLINT(google-explicit-constructor)

  /// Accepts decimal text ("0.15") or a fraction ("3/20").
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  /// Exact decimal when the denominator has no prime factors other than 2 and 5.
  std::optional<ExactDecimal> to_exact_decimal() const;
  /// Decimal when exact, "p/q" otherwise. Lossless; used for persistence.
  std::string to_string() const;
  /// Rounded half away from zero to `digits` fractional digits, zero-padded.
  std::string to_fixed(unsigned digits) const;
  /// Exact decimal if representable, otherwise to_fixed(digits).
  std::string to_display(unsigned digits = 9) const;
  double to_double() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  Rational operator-() const { return Rational(Impl(-value_)); }
  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Impl value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace dforge

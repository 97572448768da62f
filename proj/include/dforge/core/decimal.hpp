#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dforge {

using BigInt = boost::multiprecision::cpp_int;

class Rational;

class DecimalParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact base-10 number stored as mantissa * 10^-scale.
///
/// Values are kept normalized (no trailing zero digits in the mantissa
/// unless scale is 0), so structural and numeric equality coincide.
/// Addition, subtraction and multiplication never round.
class ExactDecimal {
 public:
  ExactDecimal() = default;
  ExactDecimal(std::int64_t integer);  // NOLINT(google-explicit-constructor)
  ExactDecimal(BigInt mantissa, unsigned scale);

  /// Accepts an optional sign, digits, and an optional fractional part
  /// ("-12", "0.15", ".5", "3."). Exponent notation is rejected.
  static ExactDecimal parse(std::string_view text);
  static bool looks_like_decimal(std::string_view text);

  const BigInt& mantissa() const { return mantissa_; }
  unsigned scale() const { return scale_; }

  /// Plain positional notation with the minimal number of fractional digits.
  std::string to_string() const;
  double to_double() const;
  Rational to_rational() const;

  bool is_zero() const { return mantissa_.is_zero(); }
  int sign() const { return mantissa_.sign(); }

  ExactDecimal operator-() const;
  ExactDecimal& operator+=(const ExactDecimal& rhs);
  ExactDecimal& operator-=(const ExactDecimal& rhs);
  ExactDecimal& operator*=(const ExactDecimal& rhs);

  friend ExactDecimal operator+(ExactDecimal lhs, const ExactDecimal& rhs) { return lhs += rhs; }
  friend ExactDecimal operator-(ExactDecimal lhs, const ExactDecimal& rhs) { return lhs -= rhs; }
  friend ExactDecimal operator*(ExactDecimal lhs, const ExactDecimal& rhs) { return lhs *= rhs; }

  friend bool operator==(const ExactDecimal& a, const ExactDecimal& b) {
    return a.scale_ == b.scale_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const ExactDecimal& a, const ExactDecimal& b);

 private:
  void normalize();

  BigInt mantissa_ = 0;
  unsigned scale_ = 0;
};

ExactDecimal decimal_sum(std::span<const ExactDecimal> values);

std::ostream& operator<<(std::ostream& os, const ExactDecimal& d);

}  // namespace dforge

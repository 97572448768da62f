#include "dforge/core/decimal.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "dforge/core/rational.hpp"

namespace dforge {

namespace {

BigInt pow10(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 0; i < n; ++i) result *= 10;
  return result;
}

}  // namespace

ExactDecimal::ExactDecimal(std::int64_t integer) : mantissa_(integer) {}

ExactDecimal::ExactDecimal(BigInt mantissa, unsigned scale)
    : mantissa_(std::move(mantissa)), scale_(scale) {
  normalize();
}

void ExactDecimal::normalize() {
  if (mantissa_.is_zero()) {
    scale_ = 0;
    return;
  }
  while (scale_ > 0) {
    BigInt q, r;
    boost::multiprecision::divide_qr(mantissa_, BigInt(10), q, r);
    if (!r.is_zero()) break;
    mantissa_ = std::move(q);
    --scale_;
  }
}

bool ExactDecimal::looks_like_decimal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  bool digits = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits;
}

ExactDecimal ExactDecimal::parse(std::string_view text) {
  if (!looks_like_decimal(text)) {
    throw DecimalParseError("not a decimal number: '" + std::string(text) + "'");
  }
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  unsigned scale = 0;
  bool fractional = false;
  for (; i < text.size(); ++i) {
    if (text[i] == '.') {
      fractional = true;
      continue;
    }
    mantissa = mantissa * 10 + (text[i] - '0');
    if (fractional) ++scale;
  }
  if (negative) mantissa = -mantissa;
  return ExactDecimal(std::move(mantissa), scale);
}

std::string ExactDecimal::to_string() const {
  const bool negative = mantissa_.sign() < 0;
  std::string digits = BigInt(boost::multiprecision::abs(mantissa_)).str();
  if (scale_ > 0) {
    if (digits.size() <= scale_) digits.insert(0, scale_ - digits.size() + 1, '0');
    digits.insert(digits.size() - scale_, 1, '.');
  }
  return negative ? "-" + digits : digits;
}

double ExactDecimal::to_double() const { return to_rational().to_double(); }

Rational ExactDecimal::to_rational() const { return Rational(mantissa_, pow10(scale_)); }

ExactDecimal ExactDecimal::operator-() const { return ExactDecimal(-mantissa_, scale_); }

ExactDecimal& ExactDecimal::operator+=(const ExactDecimal& rhs) {
  const unsigned scale = std::max(scale_, rhs.scale_);
  mantissa_ = mantissa_ * pow10(scale - scale_) + rhs.mantissa_ * pow10(scale - rhs.scale_);
  scale_ = scale;
  normalize();
  return *this;
}

ExactDecimal& ExactDecimal::operator-=(const ExactDecimal& rhs) { return *this += -rhs; }

ExactDecimal& ExactDecimal::operator*=(const ExactDecimal& rhs) {
  mantissa_ *= rhs.mantissa_;
  scale_ += rhs.scale_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const ExactDecimal& a, const ExactDecimal& b) {
  const unsigned scale = std::max(a.scale_, b.scale_);
  const BigInt lhs = a.mantissa_ * pow10(scale - a.scale_);
  const BigInt rhs = b.mantissa_ * pow10(scale - b.scale_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactDecimal decimal_sum(std::span<const ExactDecimal> values) {
  ExactDecimal total;
  for (const auto& v : values) total += v;
  return total;
}

std::ostream& operator<<(std::ostream& os, const ExactDecimal& d) { return os << d.to_string(); }

}  // namespace dforge

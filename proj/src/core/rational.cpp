#include "dforge/core/rational.hpp"

#include <cmath>
#include <ostream>

namespace dforge {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator.is_zero()) throw std::domain_error("rational with zero denominator");
  value_ = Impl(numerator, denominator);
}

Rational::Rational(const ExactDecimal& d) : Rational(d.to_rational()) {}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(ExactDecimal::parse(text));
  const auto num = ExactDecimal::parse(text.substr(0, slash));
  const auto den = ExactDecimal::parse(text.substr(slash + 1));
  if (den.is_zero()) throw DecimalParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num) / Rational(den);
}

BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }

int Rational::sign() const { return value_.sign(); }

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::optional<ExactDecimal> Rational::to_exact_decimal() const {
  BigInt den = denominator();
  unsigned twos = 0;
  unsigned fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  const unsigned scale = std::max(twos, fives);
  BigInt scaled = numerator();
  for (unsigned i = 0; i < scale; ++i) scaled *= 10;
  return ExactDecimal(scaled / denominator(), scale);
}

std::string Rational::to_string() const {
  if (auto d = to_exact_decimal()) return d->to_string();
  return numerator().str() + "/" + denominator().str();
}

std::string Rational::to_fixed(unsigned digits) const {
  BigInt scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const BigInt num = boost::multiprecision::abs(numerator()) * scale;
  const BigInt den = denominator();
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r * 2 >= den) q += 1;
  std::string text = ExactDecimal(q, 0).to_string();
  if (digits > 0) {
    if (text.size() <= digits) text.insert(0, digits - text.size() + 1, '0');
    text.insert(text.size() - digits, 1, '.');
  }
  if (sign() < 0 && !q.is_zero()) text.insert(0, 1, '-');
  return text;
}

std::string Rational::to_display(unsigned digits) const {
  if (auto d = to_exact_decimal(); d && d->scale() <= digits) return d->to_string();
  return to_fixed(digits);
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace dforge

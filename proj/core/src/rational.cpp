#include "hr13/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace hr13 {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("Rational: multiplication overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Rational: addition overflow");
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t da = a.den_ / g;
  const std::int64_t db = b.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)), checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  const std::int64_t n1 = g1 == 0 ? a.num_ : a.num_ / g1;
  const std::int64_t d2 = g1 == 0 ? b.den_ : b.den_ / g1;
  const std::int64_t n2 = g2 == 0 ? b.num_ : b.num_ / g2;
  const std::int64_t d1 = g2 == 0 ? a.den_ : a.den_ / g2;
  return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace hr13

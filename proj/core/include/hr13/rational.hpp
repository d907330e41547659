#pragma once

#include <cstdint>
#include <compare>
#include <string>

namespace hr13 {

/// Exact rational number with a positive denominator in lowest terms.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hr13

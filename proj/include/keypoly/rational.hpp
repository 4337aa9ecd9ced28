#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "keypoly/error.hpp"

namespace keypoly {

/// Checked 64-bit integer helpers. Every intermediate goes through __int128
/// and is narrowed back with an explicit range check, so wraparound can never
/// leak into a valuation.
namespace checked {

std::int64_t narrow(__int128 v);
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace checked

/**
 * Exact rational number in lowest terms.
 *
 * - denominator always positive, sign carried by the numerator
 * - zero is 0/1
 * - all arithmetic is overflow-checked and throws ErrorKind::Overflow
 */
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  /// Smallest integer >= *this.
  std::int64_t ceil() const noexcept;
  std::int64_t floor() const noexcept;

  Rational operator-() const;
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// `n` for integers, `n/d` otherwise.
  std::string str() const;

  /// Accepts `n`, `-n`, `n/d`, `-n/d` (surrounding whitespace ignored).
  static Rational parse(const std::string& text);

 private:
  struct Reduced {};
  Rational(std::int64_t n, std::int64_t d, Reduced) noexcept : num_(n), den_(d) {}
  friend Rational make_reduced(std::int64_t n, std::int64_t d) noexcept;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace keypoly

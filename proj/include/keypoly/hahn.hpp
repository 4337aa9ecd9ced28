#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "keypoly/value.hpp"

namespace keypoly {

struct HahnTerm {
  Rational exponent;
  std::uint32_t coeff = 0;  // nonzero residue mod p

  friend bool operator==(const HahnTerm&, const HahnTerm&) = default;
};

/**
 * Truncated generalized power series over F_p with rational exponents.
 *
 * Terms are kept in strictly increasing exponent order with nonzero
 * coefficients. Every term with exponent below `precision()` is exact; above
 * it nothing is known. An infinite precision means the series is an exact
 * finite sum.
 *
 * Precision propagation:
 *   add: min(prec a, prec b)
 *   mul: min(prec a + lead b, prec b + lead a)
 * where `lead` is the least exponent, infinity for the exact zero series, and
 * the precision itself for an empty series known only up to its precision.
 */
class HahnSeries {
 public:
  explicit HahnSeries(std::uint32_t p = 2) : p_(p) {}

  /// Normalizes: sorts, merges equal exponents, drops zero coefficients and
  /// every term at or above the precision.
  static HahnSeries from_terms(std::uint32_t p, std::vector<HahnTerm> terms, Value precision = Value::infinity());
  static HahnSeries monomial(std::uint32_t p, std::uint32_t coeff, Rational exponent,
                             Value precision = Value::infinity());
  static HahnSeries constant(std::uint32_t p, std::int64_t c);

  std::uint32_t p() const noexcept { return p_; }
  const std::vector<HahnTerm>& terms() const noexcept { return terms_; }
  const Value& precision() const noexcept { return precision_; }
  bool is_exact() const noexcept { return precision_.is_infinite(); }
  /// Exact zero: no terms and infinite precision.
  bool is_zero() const noexcept { return terms_.empty() && is_exact(); }
  bool is_monomial() const noexcept { return terms_.size() == 1 && is_exact(); }

  /// Lower bound for the least exponent of the true series (see class doc).
  Value lead() const;

  /// Least exponent. Throws InsufficientPrecision for an empty series with
  /// finite precision; infinity for the exact zero.
  Value valuation() const;

  HahnSeries truncated(const Value& prec) const;

  HahnSeries operator-() const;
  friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b);
  friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b);
  friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);
  HahnSeries scaled(std::uint32_t c) const;
  HahnSeries pow(unsigned e) const;
  /// Exact inverse of a monomial; anything else raises NotInvertible.
  HahnSeries inverse_monomial() const;

  friend bool operator==(const HahnSeries&, const HahnSeries&) = default;

  /// `c*t^(a/b) + ... + O(t^(prec))`, exponents ascending; the O-term is
  /// omitted for exact series, and the zero series prints as `0`.
  std::string str() const;
  /// Compact literal form used inside polynomial coefficients, e.g.
  /// `t^(-1/2) + t^-1 + 1`. Exact series only.
  std::string literal() const;

 private:
  std::uint32_t p_;
  std::vector<HahnTerm> terms_;
  Value precision_ = Value::infinity();
};

enum class HahnOp { add, mul };
HahnSeries hahn_arith(const HahnSeries& a, const HahnSeries& b, HahnOp op);
Value hahn_valuation(const HahnSeries& a);

/// `t^e` rendering shared by the series and coefficient printers.
std::string render_t_power(const Rational& e);

}  // namespace keypoly

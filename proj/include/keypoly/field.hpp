#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "keypoly/hahn.hpp"
#include "keypoly/value.hpp"

namespace keypoly {

enum class FieldKind {
  prime_field,      // F_p, trivial valuation
  rationals_padic,  // Q with the p-adic valuation
  ratfunc_tadic,    // F_p(t) with the t-adic valuation
  puiseux,          // finite sums of c*t^e over F_p, e rational; valuation = least exponent
};

struct FieldDescriptor {
  FieldKind kind = FieldKind::rationals_padic;
  std::uint32_t p = 2;

  /// Throws Precondition unless p is prime.
  static FieldDescriptor make(FieldKind kind, std::uint32_t p);

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

  /// `F3`, `Q:2`, `F2(t)`, `F2<t>`.
  std::string str() const;
  /// Inverse of str(); also accepts `Q` (p = 2) and `puiseux:p`.
  static FieldDescriptor parse(const std::string& text);

  /// Characteristic of the coefficient field itself (0 for Q).
  std::uint32_t characteristic() const { return kind == FieldKind::rationals_padic ? 0 : p; }
};

/// Reduced fraction of F_p[t] polynomials; denominator monic.
/// Coefficient vectors are little-endian (index = power of t).
struct RatFunc {
  std::vector<std::uint32_t> num;
  std::vector<std::uint32_t> den{1};

  friend bool operator==(const RatFunc&, const RatFunc&) = default;
};

/**
 * Exact element of one of the coefficient fields. Elements of different
 * descriptors never mix: every binary operation checks and raises
 * FieldMismatch.
 *
 * Elements of the `puiseux` kind form a ring, not a field; only monomials
 * can be inverted (NotInvertible otherwise). Division by monic polynomials
 * never needs more than that.
 */
class FieldElem {
 public:
  explicit FieldElem(FieldDescriptor desc = {});

  static FieldElem zero(const FieldDescriptor& d) { return FieldElem(d); }
  static FieldElem one(const FieldDescriptor& d) { return from_int(d, 1); }
  static FieldElem from_int(const FieldDescriptor& d, std::int64_t n);
  static FieldElem from_rational(const FieldDescriptor& d, const Rational& r);
  /// t^e. Integer exponents for F_p(t); any rational for puiseux.
  static FieldElem t_power(const FieldDescriptor& d, const Rational& e);
  static FieldElem from_series(const FieldDescriptor& d, const HahnSeries& s);
  static FieldElem from_ratfunc(const FieldDescriptor& d, std::vector<std::uint32_t> num,
                                std::vector<std::uint32_t> den);

  const FieldDescriptor& descriptor() const noexcept { return desc_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem inverse() const;
  FieldElem pow(unsigned e) const;

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

  /// Canonical compact rendering used in polynomial literals.
  std::string str() const;
  /// True when str() is a sum and needs parentheses as a factor.
  bool is_compound() const;

  /// Image in truncated series over F_p for the series-evaluation backend.
  /// F_p and puiseux elements map exactly; F_p(t) elements are expanded as
  /// Laurent series up to `precision`. Q has no such image (FieldMismatch).
  HahnSeries to_series(std::int64_t precision) const;

  // Raw access for the printers and tests.
  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  const RatFunc& ratfunc() const { return std::get<RatFunc>(value_); }
  const HahnSeries& series() const { return std::get<HahnSeries>(value_); }

 private:
  FieldDescriptor desc_;
  std::variant<std::uint32_t, Rational, RatFunc, HahnSeries> value_;
};

enum class FieldOp { add, sub, mul, div, inv };
FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op);

/// nu restricted to K: trivial on F_p, p-adic on Q, t-adic on F_p(t), least
/// exponent on puiseux. The valuation of 0 is infinity.
Value base_valuation(const FieldElem& a);

bool is_prime(std::uint32_t p);

}  // namespace keypoly

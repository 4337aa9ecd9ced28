#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "keypoly/field.hpp"

namespace keypoly {

/// Dense univariate polynomial in x over one coefficient field.
/// Coefficients are little-endian; the zero polynomial has no coefficients
/// and degree -1 (standing in for -infinity).
class Poly {
 public:
  explicit Poly(FieldDescriptor field = {}) : field_(field) {}
  Poly(FieldDescriptor field, std::vector<FieldElem> coeffs);

  static Poly constant(const FieldElem& c);
  static Poly x(const FieldDescriptor& field);
  /// c * x^k
  static Poly monomial(const FieldElem& c, int k);

  const FieldDescriptor& field() const noexcept { return field_; }
  const std::vector<FieldElem>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const;
  /// Coefficient of x^k (zero beyond the degree).
  FieldElem coeff(int k) const;
  const FieldElem& leading() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const FieldElem& c) const;
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly&, const Poly&) = default;

  /// `c_k*x^k + ... + c_0`, descending powers.
  std::string str() const;

 private:
  void trim();

  FieldDescriptor field_;
  std::vector<FieldElem> coeffs_;
};

enum class PolyOp { add, sub, mul };
Poly poly_arith(const Poly& f, const Poly& g, PolyOp op);

struct DivResult {
  Poly quotient;
  Poly remainder;
};

/// f = q*g + r with deg r < deg g. Raises DivisionByZero for g = 0 and
/// FieldMismatch when the fields differ. A non-monic divisor needs its
/// leading coefficient to be invertible.
DivResult euclid_div(const Poly& f, const Poly& g);

/// Hasse derivative of order b: sum C(k,b) c_k x^(k-b). Order 0 is the identity.
Poly hasse_derivative(const Poly& f, int order);

/**
 * Polynomial in an auxiliary variable X whose coefficients are polynomials
 * in x. With a bound n every coefficient has degree < n (the K[x]_n[X]
 * of a Q-expansion); the bound is enforced at construction.
 */
class XPoly {
 public:
  explicit XPoly(FieldDescriptor field = {}, std::optional<int> bound = std::nullopt)
      : field_(field), bound_(bound) {}
  XPoly(FieldDescriptor field, std::vector<Poly> coeffs, std::optional<int> bound = std::nullopt);

  const FieldDescriptor& field() const noexcept { return field_; }
  const std::vector<Poly>& coeffs() const noexcept { return coeffs_; }
  const std::optional<int>& bound() const noexcept { return bound_; }
  /// deg_X; -1 for zero.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Poly coeff(int i) const;

  friend bool operator==(const XPoly&, const XPoly&) = default;

  std::string str() const;

 private:
  FieldDescriptor field_;
  std::vector<Poly> coeffs_;
  std::optional<int> bound_;
};

XPoly hasse_derivative(const XPoly& l, int order);

/// l(g): substitute X = g and collect.
Poly compose_x(const XPoly& l, const Poly& g);

/// Entries (d_i l)(a) for i = 0..deg_X l, so that for every b
///   l(b) = sum_i (d_i l)(a) (b - a)^i.
/// Raises DegreeBound when l carries a bound n and deg a >= n.
std::vector<Poly> taylor_expand(const XPoly& l, const Poly& a);

}  // namespace keypoly

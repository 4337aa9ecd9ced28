#include "keypoly/poly.hpp"

#include <algorithm>

namespace keypoly {

namespace {

void check_field(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (!(a == b)) throw Error(ErrorKind::FieldMismatch, a.str() + " vs " + b.str());
}

/// C(n, k) mapped into the field.
FieldElem binomial_in(const FieldDescriptor& field, int n, int k) {
  if (field.characteristic() != 0) {
    // Lucas keeps the integer binomial small even for large n.
    std::int64_t p = field.p, result = 1;
    std::int64_t nn = n, kk = k;
    while (nn > 0 || kk > 0) {
      std::int64_t c = checked::binomial(nn % p, kk % p) % p;
      result = result * c % p;
      if (result == 0) break;
      nn /= p;
      kk /= p;
    }
    return FieldElem::from_int(field, result);
  }
  return FieldElem::from_int(field, checked::binomial(n, k));
}

}  // namespace

Poly::Poly(FieldDescriptor field, std::vector<FieldElem> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) check_field(field_, c.descriptor());
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(const FieldElem& c) { return Poly(c.descriptor(), {c}); }

Poly Poly::x(const FieldDescriptor& field) {
  return Poly(field, {FieldElem::zero(field), FieldElem::one(field)});
}

Poly Poly::monomial(const FieldElem& c, int k) {
  std::vector<FieldElem> v(static_cast<std::size_t>(k) + 1, FieldElem::zero(c.descriptor()));
  v.back() = c;
  return Poly(c.descriptor(), std::move(v));
}

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

FieldElem Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return FieldElem::zero(field_);
  return coeffs_[static_cast<std::size_t>(k)];
}

const FieldElem& Poly::leading() const {
  if (coeffs_.empty()) throw Error(ErrorKind::Precondition, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  check_field(a.field_, b.field_);
  const auto& longer = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
  const auto& shorter = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
  Poly r = longer;
  for (std::size_t i = 0; i < shorter.coeffs_.size(); ++i) r.coeffs_[i] += shorter.coeffs_[i];
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  check_field(a.field_, b.field_);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  std::vector<FieldElem> out(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElem::zero(a.field_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Poly(a.field_, std::move(out));
}

Poly Poly::scaled(const FieldElem& c) const {
  check_field(field_, c.descriptor());
  Poly r = *this;
  for (auto& x : r.coeffs_) x *= c;
  r.trim();
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(FieldElem::one(field_));
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string Poly::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const FieldElem& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    bool negative = field_.kind == FieldKind::rationals_padic && c.rational().sign() < 0;
    std::string body = negative ? (-c).str() : c.str();
    if (k > 0) {
      std::string mono = k == 1 ? "x" : "x^" + std::to_string(k);
      bool unit = negative ? (-c).is_one() : c.is_one();
      if (unit) {
        body = mono;
      } else if (c.is_compound()) {
        body = "(" + body + ")*" + mono;
      } else {
        body += "*" + mono;
      }
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

Poly poly_arith(const Poly& f, const Poly& g, PolyOp op) {
  switch (op) {
    case PolyOp::add: return f + g;
    case PolyOp::sub: return f - g;
    case PolyOp::mul: return f * g;
  }
  return f;
}

DivResult euclid_div(const Poly& f, const Poly& g) {
  check_field(f.field(), g.field());
  if (g.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
  const FieldDescriptor& field = f.field();
  if (f.degree() < g.degree()) return {Poly(field), f};
  const bool monic = g.is_monic();
  const FieldElem lead_inv = monic ? FieldElem::one(field) : g.leading().inverse();
  std::vector<FieldElem> rem = f.coeffs();
  std::vector<FieldElem> quo(static_cast<std::size_t>(f.degree() - g.degree()) + 1, FieldElem::zero(field));
  const int dg = g.degree();
  for (int k = f.degree(); k >= dg; --k) {
    FieldElem c = rem[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!monic) c *= lead_inv;
    quo[static_cast<std::size_t>(k - dg)] = c;
    for (int j = 0; j <= dg; ++j) {
      rem[static_cast<std::size_t>(k - dg + j)] -= c * g.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dg), FieldElem::zero(field));
  return {Poly(field, std::move(quo)), Poly(field, std::move(rem))};
}

Poly hasse_derivative(const Poly& f, int order) {
  if (order < 0) throw Error(ErrorKind::Precondition, "negative derivative order");
  if (order == 0) return f;
  if (f.degree() < order) return Poly(f.field());
  std::vector<FieldElem> out;
  out.reserve(static_cast<std::size_t>(f.degree() - order + 1));
  for (int k = order; k <= f.degree(); ++k) {
    const FieldElem& c = f.coeffs()[static_cast<std::size_t>(k)];
    out.push_back(c.is_zero() ? c : c * binomial_in(f.field(), k, order));
  }
  return Poly(f.field(), std::move(out));
}

// ---------------------------------------------------------------------------

XPoly::XPoly(FieldDescriptor field, std::vector<Poly> coeffs, std::optional<int> bound)
    : field_(field), coeffs_(std::move(coeffs)), bound_(bound) {
  for (const auto& c : coeffs_) {
    check_field(field_, c.field());
    if (bound_ && c.degree() >= *bound_) {
      throw Error(ErrorKind::DegreeBound,
                  "coefficient " + c.str() + " has degree >= " + std::to_string(*bound_));
    }
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly XPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Poly(field_);
  return coeffs_[static_cast<std::size_t>(i)];
}

std::string XPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Poly& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? "X" : "X^" + std::to_string(k));
    bool unit = c.degree() == 0 && c.coeffs()[0].is_one();
    if (k == 0) {
      out += c.str();
    } else if (unit) {
      out += mono;
    } else if (c.degree() == 0 && !c.coeffs()[0].is_compound()) {
      out += c.str() + "*" + mono;
    } else {
      out += "(" + c.str() + ")*" + mono;
    }
  }
  return out;
}

XPoly hasse_derivative(const XPoly& l, int order) {
  if (order < 0) throw Error(ErrorKind::Precondition, "negative derivative order");
  if (order == 0) return l;
  std::vector<Poly> out;
  for (int k = order; k <= l.degree(); ++k) {
    out.push_back(l.coeffs()[static_cast<std::size_t>(k)].scaled(binomial_in(l.field(), k, order)));
  }
  return XPoly(l.field(), std::move(out), l.bound());
}

Poly compose_x(const XPoly& l, const Poly& g) {
  check_field(l.field(), g.field());
  Poly acc(l.field());
  for (int k = l.degree(); k >= 0; --k) acc = acc * g + l.coeffs()[static_cast<std::size_t>(k)];
  return acc;
}

std::vector<Poly> taylor_expand(const XPoly& l, const Poly& a) {
  if (l.bound() && a.degree() >= *l.bound()) {
    throw Error(ErrorKind::DegreeBound, "expansion point has degree >= " + std::to_string(*l.bound()));
  }
  std::vector<Poly> out;
  for (int i = 0; i <= std::max(l.degree(), 0); ++i) out.push_back(compose_x(hasse_derivative(l, i), a));
  return out;
}

}  // namespace keypoly

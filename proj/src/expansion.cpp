#include "keypoly/expansion.hpp"

#include <algorithm>

namespace keypoly {

namespace {

void check_key(const Poly& key) {
  if (key.degree() < 1) throw Error(ErrorKind::Precondition, "expansion key must have degree >= 1");
  if (!key.is_monic()) throw Error(ErrorKind::Precondition, "expansion key must be monic");
}

}  // namespace

Poly QExpansion::coeff(int i) const {
  if (i < 0 || i > degree()) return Poly(key.field());
  return coeffs[static_cast<std::size_t>(i)];
}

XPoly QExpansion::as_xpoly() const { return XPoly(key.field(), coeffs, key.degree()); }

QExpansion q_expand(const Poly& f, const Poly& key) {
  check_key(key);
  QExpansion e{key, {}};
  Poly rest = f;
  while (!rest.is_zero()) {
    DivResult qr = euclid_div(rest, key);
    e.coeffs.push_back(std::move(qr.remainder));
    rest = std::move(qr.quotient);
  }
  return e;
}

bool TruncationReport::attains(int i) const { return std::find(attaining.begin(), attaining.end(), i) != attaining.end(); }

TruncationReport truncate(const PxValuation& v, const QExpansion& expansion, const Value& nu_key) {
  TruncationReport rep;
  rep.value = Value::infinity();
  for (int i = 0; i <= expansion.degree(); ++i) {
    const Poly& a = expansion.coeffs[static_cast<std::size_t>(i)];
    Value term = a.is_zero() ? Value::infinity() : v(a) + (i == 0 ? Value(0) : vg_scale(nu_key, i));
    rep.terms.push_back(term);
    if (!a.is_zero()) rep.value = min(rep.value, term);
  }
  if (rep.value.is_finite()) {
    for (int i = 0; i <= expansion.degree(); ++i) {
      if (rep.terms[static_cast<std::size_t>(i)] == rep.value) rep.attaining.push_back(i);
    }
    rep.delta = rep.attaining.back();
  }
  return rep;
}

TruncationReport truncate(const PxValuation& v, const Poly& f, const Poly& key) {
  return truncate(v, q_expand(f, key), v(key));
}

Poly a_rho0(const Poly& f, const Poly& key) {
  check_key(key);
  return euclid_div(f, key).remainder;
}

}  // namespace keypoly

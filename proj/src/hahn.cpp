#include "keypoly/hahn.hpp"

#include <algorithm>

namespace keypoly {

namespace {

std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % p);
}

std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

void check_same_p(const HahnSeries& a, const HahnSeries& b) {
  if (a.p() != b.p()) throw Error(ErrorKind::FieldMismatch, "series over different primes");
}

}  // namespace

HahnSeries HahnSeries::from_terms(std::uint32_t p, std::vector<HahnTerm> terms, Value precision) {
  HahnSeries s(p);
  s.precision_ = precision;
  auto by_exponent = [](const HahnTerm& a, const HahnTerm& b) { return a.exponent < b.exponent; };
  if (!std::is_sorted(terms.begin(), terms.end(), by_exponent)) std::sort(terms.begin(), terms.end(), by_exponent);
  s.terms_.reserve(terms.size());
  const bool bounded = precision.is_finite();
  for (auto& t : terms) {
    if (bounded && !(t.exponent < precision.rational())) break;
    std::uint32_t c = t.coeff % p;
    if (!s.terms_.empty() && s.terms_.back().exponent == t.exponent) {
      s.terms_.back().coeff = mod_add(s.terms_.back().coeff, c, p);
      if (s.terms_.back().coeff == 0) s.terms_.pop_back();
    } else if (c != 0) {
      s.terms_.push_back({t.exponent, c});
    }
  }
  return s;
}

HahnSeries HahnSeries::monomial(std::uint32_t p, std::uint32_t coeff, Rational exponent, Value precision) {
  return from_terms(p, {{exponent, coeff}}, precision);
}

HahnSeries HahnSeries::constant(std::uint32_t p, std::int64_t c) {
  std::int64_t r = c % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return monomial(p, static_cast<std::uint32_t>(r), Rational(0));
}

Value HahnSeries::lead() const {
  if (!terms_.empty()) return Value(terms_.front().exponent);
  return precision_;
}

Value HahnSeries::valuation() const {
  if (!terms_.empty()) return Value(terms_.front().exponent);
  if (is_exact()) return Value::infinity();
  throw Error(ErrorKind::InsufficientPrecision,
              "series is indistinguishable from zero below precision " + precision_.str());
}

HahnSeries HahnSeries::truncated(const Value& prec) const {
  return from_terms(p_, terms_, min(prec, precision_));
}

HahnSeries HahnSeries::operator-() const {
  HahnSeries r = *this;
  for (auto& t : r.terms_) t.coeff = (p_ - t.coeff) % p_;
  return r;
}

HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) {
  check_same_p(a, b);
  std::vector<HahnTerm> all;
  all.reserve(a.terms_.size() + b.terms_.size());
  std::merge(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(), std::back_inserter(all),
             [](const HahnTerm& x, const HahnTerm& y) { return x.exponent < y.exponent; });
  return HahnSeries::from_terms(a.p_, std::move(all), min(a.precision_, b.precision_));
}

HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) { return a + (-b); }

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
  check_same_p(a, b);
  const std::uint32_t p = a.p_;
  Value prec = min(a.precision_ + b.lead(), b.precision_ + a.lead());
  std::vector<HahnTerm> all;
  all.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Rational e = x.exponent + y.exponent;
      if (prec.is_infinite() || e < prec.rational()) all.push_back({e, mod_mul(x.coeff, y.coeff, p)});
    }
  }
  return HahnSeries::from_terms(p, std::move(all), prec);
}

HahnSeries HahnSeries::scaled(std::uint32_t c) const {
  std::vector<HahnTerm> t = terms_;
  for (auto& term : t) term.coeff = mod_mul(term.coeff, c % p_, p_);
  return from_terms(p_, std::move(t), precision_);
}

HahnSeries HahnSeries::pow(unsigned e) const {
  HahnSeries result = constant(p_, 1);
  HahnSeries base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

HahnSeries HahnSeries::inverse_monomial() const {
  if (terms_.empty()) throw Error(ErrorKind::DivisionByZero, "inverse of zero series");
  if (!is_monomial()) throw Error(ErrorKind::NotInvertible, "only monomials are invertible among finite series");
  const auto& t = terms_.front();
  return monomial(p_, mod_pow(t.coeff, p_ - 2, p_), -t.exponent);
}

std::string render_t_power(const Rational& e) {
  if (e == Rational(1)) return "t";
  if (e.is_integer()) return "t^" + e.str();
  return "t^(" + e.str() + ")";
}

std::string HahnSeries::str() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += std::to_string(t.coeff) + "*t^(" + t.exponent.str() + ")";
  }
  if (!is_exact()) {
    if (!out.empty()) out += " + ";
    out += "O(t^(" + precision_.str() + "))";
  }
  return out.empty() ? "0" : out;
}

std::string HahnSeries::literal() const {
  if (!is_exact()) throw Error(ErrorKind::Precondition, "inexact series has no literal form");
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      out += render_t_power(t.exponent);
    } else {
      out += std::to_string(t.coeff) + "*" + render_t_power(t.exponent);
    }
  }
  return out.empty() ? "0" : out;
}

HahnSeries hahn_arith(const HahnSeries& a, const HahnSeries& b, HahnOp op) {
  return op == HahnOp::add ? a + b : a * b;
}

Value hahn_valuation(const HahnSeries& a) { return a.valuation(); }

}  // namespace keypoly

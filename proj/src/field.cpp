#include "keypoly/field.hpp"

#include <algorithm>
#include <cctype>

namespace keypoly {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

FieldDescriptor FieldDescriptor::make(FieldKind kind, std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::Precondition, std::to_string(p) + " is not prime");
  return FieldDescriptor{kind, p};
}

std::string FieldDescriptor::str() const {
  const std::string ps = std::to_string(p);
  switch (kind) {
    case FieldKind::prime_field: return "F" + ps;
    case FieldKind::rationals_padic: return "Q:" + ps;
    case FieldKind::ratfunc_tadic: return "F" + ps + "(t)";
    case FieldKind::puiseux: return "F" + ps + "<t>";
  }
  return "?";
}

FieldDescriptor FieldDescriptor::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto prime_of = [&](const std::string& digits) -> std::uint32_t {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        digits.size() > 9) {
      throw Error(ErrorKind::Parse, "unknown field '" + text + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(digits));
  };
  if (s == "Q") return make(FieldKind::rationals_padic, 2);
  if (s.rfind("Q:", 0) == 0) return make(FieldKind::rationals_padic, prime_of(s.substr(2)));
  if (s.rfind("puiseux:", 0) == 0) return make(FieldKind::puiseux, prime_of(s.substr(8)));
  if (!s.empty() && s[0] == 'F') {
    auto ends_with = [&](const std::string& suffix) {
      return s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("(t)")) return make(FieldKind::ratfunc_tadic, prime_of(s.substr(1, s.size() - 4)));
    if (ends_with("<t>")) return make(FieldKind::puiseux, prime_of(s.substr(1, s.size() - 4)));
    return make(FieldKind::prime_field, prime_of(s.substr(1)));
  }
  throw Error(ErrorKind::Parse, "unknown field '" + text + "'");
}

// ---------------------------------------------------------------------------
// Dense F_p[t] helpers.

namespace {

using Fp = std::vector<std::uint32_t>;

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(std::int64_t n, std::uint32_t p) {
  std::int64_t r = n % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fp fp_add(const Fp& a, const Fp& b, std::uint32_t p) {
  Fp r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t s = (i < a.size() ? a[i] : 0) + static_cast<std::uint64_t>(i < b.size() ? b[i] : 0);
    r[i] = static_cast<std::uint32_t>(s % p);
  }
  trim(r);
  return r;
}

Fp fp_neg(const Fp& a, std::uint32_t p) {
  Fp r = a;
  for (auto& c : r) c = (p - c) % p;
  return r;
}

Fp fp_mul(const Fp& a, const Fp& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

Fp fp_scale(const Fp& a, std::uint32_t c, std::uint32_t p) {
  Fp r = a;
  for (auto& x : r) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * c % p);
  trim(r);
  return r;
}

/// a = q*b + r
void fp_divmod(const Fp& a, const Fp& b, std::uint32_t p, Fp& q, Fp& r) {
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    std::uint32_t c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r.back()) * lead_inv % p);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t sub = static_cast<std::uint64_t>(c) * b[j] % p;
      r[shift + j] = static_cast<std::uint32_t>((r[shift + j] + p - sub) % p);
    }
    trim(r);
  }
  trim(q);
}

Fp fp_gcd(Fp a, Fp b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fp q, r;
    fp_divmod(a, b, p, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = fp_scale(a, inv_mod(a.back(), p), p);
  return a;
}

std::size_t fp_ord(const Fp& a) {
  std::size_t i = 0;
  while (i < a.size() && a[i] == 0) ++i;
  return i;
}

RatFunc normalize(Fp num, Fp den, std::uint32_t p) {
  trim(num);
  trim(den);
  if (den.empty()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num.empty()) return RatFunc{{}, {1}};
  Fp g = fp_gcd(num, den, p);
  if (g.size() > 1) {
    Fp q, r;
    fp_divmod(num, g, p, q, r);
    num = q;
    fp_divmod(den, g, p, q, r);
    den = q;
  }
  std::uint32_t li = inv_mod(den.back(), p);
  return RatFunc{fp_scale(num, li, p), fp_scale(den, li, p)};
}

std::string fp_render(const Fp& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(a[i]);
    } else {
      if (a[i] != 1) out += std::to_string(a[i]) + "*";
      out += render_t_power(Rational(static_cast<std::int64_t>(i)));
    }
  }
  return out.empty() ? "0" : out;
}

std::size_t term_count(const Fp& a) {
  return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [](std::uint32_t c) { return c != 0; }));
}

bool is_monomial(const Fp& a) { return term_count(a) == 1; }

std::int64_t padic_ord(std::int64_t n, std::uint32_t p) {
  std::int64_t k = 0;
  while (n % static_cast<std::int64_t>(p) == 0) {
    n /= static_cast<std::int64_t>(p);
    ++k;
  }
  return k;
}

void check_same(const FieldElem& a, const FieldElem& b) {
  if (!(a.descriptor() == b.descriptor())) {
    throw Error(ErrorKind::FieldMismatch, a.descriptor().str() + " vs " + b.descriptor().str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

FieldElem::FieldElem(FieldDescriptor desc) : desc_(desc) {
  switch (desc_.kind) {
    case FieldKind::prime_field: value_ = std::uint32_t{0}; break;
    case FieldKind::rationals_padic: value_ = Rational(0); break;
    case FieldKind::ratfunc_tadic: value_ = RatFunc{}; break;
    case FieldKind::puiseux: value_ = HahnSeries(desc_.p); break;
  }
}

FieldElem FieldElem::from_int(const FieldDescriptor& d, std::int64_t n) {
  FieldElem e(d);
  switch (d.kind) {
    case FieldKind::prime_field: e.value_ = reduce(n, d.p); break;
    case FieldKind::rationals_padic: e.value_ = Rational(n); break;
    case FieldKind::ratfunc_tadic: e.value_ = normalize({reduce(n, d.p)}, {1}, d.p); break;
    case FieldKind::puiseux: e.value_ = HahnSeries::constant(d.p, n); break;
  }
  return e;
}

FieldElem FieldElem::from_rational(const FieldDescriptor& d, const Rational& r) {
  if (d.kind == FieldKind::rationals_padic) {
    FieldElem e(d);
    e.value_ = r;
    return e;
  }
  return from_int(d, r.num()) / from_int(d, r.den());
}

FieldElem FieldElem::t_power(const FieldDescriptor& d, const Rational& e) {
  FieldElem r(d);
  switch (d.kind) {
    case FieldKind::ratfunc_tadic: {
      if (!e.is_integer()) throw Error(ErrorKind::FieldMismatch, "fractional power of t outside puiseux fields");
      Fp mono(static_cast<std::size_t>(e.num() < 0 ? -e.num() : e.num()) + 1, 0);
      mono.back() = 1;
      r.value_ = e.num() >= 0 ? RatFunc{mono, {1}} : RatFunc{{1}, mono};
      return r;
    }
    case FieldKind::puiseux:
      r.value_ = HahnSeries::monomial(d.p, 1, e);
      return r;
    default:
      throw Error(ErrorKind::FieldMismatch, "t is not an element of " + d.str());
  }
}

FieldElem FieldElem::from_series(const FieldDescriptor& d, const HahnSeries& s) {
  if (d.kind != FieldKind::puiseux || s.p() != d.p) throw Error(ErrorKind::FieldMismatch, "series into " + d.str());
  if (!s.is_exact()) throw Error(ErrorKind::Precondition, "coefficients must be exact finite sums");
  FieldElem r(d);
  r.value_ = s;
  return r;
}

FieldElem FieldElem::from_ratfunc(const FieldDescriptor& d, std::vector<std::uint32_t> num,
                                  std::vector<std::uint32_t> den) {
  if (d.kind != FieldKind::ratfunc_tadic) throw Error(ErrorKind::FieldMismatch, "rational function into " + d.str());
  for (auto& c : num) c %= d.p;
  for (auto& c : den) c %= d.p;
  FieldElem r(d);
  r.value_ = normalize(std::move(num), std::move(den), d.p);
  return r;
}

bool FieldElem::is_zero() const {
  switch (desc_.kind) {
    case FieldKind::prime_field: return residue() == 0;
    case FieldKind::rationals_padic: return rational().is_zero();
    case FieldKind::ratfunc_tadic: return ratfunc().num.empty();
    case FieldKind::puiseux: return series().is_zero();
  }
  return false;
}

bool FieldElem::is_one() const { return *this == one(desc_); }

FieldElem FieldElem::operator-() const {
  FieldElem r(desc_);
  switch (desc_.kind) {
    case FieldKind::prime_field: r.value_ = (desc_.p - residue()) % desc_.p; break;
    case FieldKind::rationals_padic: r.value_ = -rational(); break;
    case FieldKind::ratfunc_tadic: r.value_ = RatFunc{fp_neg(ratfunc().num, desc_.p), ratfunc().den}; break;
    case FieldKind::puiseux: r.value_ = -series(); break;
  }
  return r;
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  check_same(a, b);
  const std::uint32_t p = a.desc_.p;
  FieldElem r(a.desc_);
  switch (a.desc_.kind) {
    case FieldKind::prime_field: r.value_ = (a.residue() + b.residue()) % p; break;
    case FieldKind::rationals_padic: r.value_ = a.rational() + b.rational(); break;
    case FieldKind::ratfunc_tadic: {
      const auto& x = a.ratfunc();
      const auto& y = b.ratfunc();
      if (x.den == y.den) {
        r.value_ = normalize(fp_add(x.num, y.num, p), x.den, p);
      } else {
        r.value_ = normalize(fp_add(fp_mul(x.num, y.den, p), fp_mul(y.num, x.den, p), p), fp_mul(x.den, y.den, p), p);
      }
      break;
    }
    case FieldKind::puiseux: r.value_ = a.series() + b.series(); break;
  }
  return r;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  check_same(a, b);
  const std::uint32_t p = a.desc_.p;
  FieldElem r(a.desc_);
  switch (a.desc_.kind) {
    case FieldKind::prime_field:
      r.value_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.residue()) * b.residue() % p);
      break;
    case FieldKind::rationals_padic: r.value_ = a.rational() * b.rational(); break;
    case FieldKind::ratfunc_tadic:
      r.value_ = normalize(fp_mul(a.ratfunc().num, b.ratfunc().num, p), fp_mul(a.ratfunc().den, b.ratfunc().den, p), p);
      break;
    case FieldKind::puiseux: r.value_ = a.series() * b.series(); break;
  }
  return r;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + desc_.str());
  FieldElem r(desc_);
  switch (desc_.kind) {
    case FieldKind::prime_field: r.value_ = inv_mod(residue(), desc_.p); break;
    case FieldKind::rationals_padic: r.value_ = rational().inverse(); break;
    case FieldKind::ratfunc_tadic: r.value_ = normalize(ratfunc().den, ratfunc().num, desc_.p); break;
    case FieldKind::puiseux: r.value_ = series().inverse_monomial(); break;
  }
  return r;
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  check_same(a, b);
  return a * b.inverse();
}

FieldElem FieldElem::pow(unsigned e) const {
  FieldElem result = one(desc_);
  FieldElem base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string FieldElem::str() const {
  switch (desc_.kind) {
    case FieldKind::prime_field: return std::to_string(residue());
    case FieldKind::rationals_padic: return rational().str();
    case FieldKind::ratfunc_tadic: {
      const auto& f = ratfunc();
      if (f.num.empty()) return "0";
      if (is_monomial(f.den)) {
        // Laurent polynomial: num * t^{-k}
        std::int64_t k = static_cast<std::int64_t>(f.den.size()) - 1;
        std::string out;
        for (std::size_t i = 0; i < f.num.size(); ++i) {
          if (f.num[i] == 0) continue;
          if (!out.empty()) out += " + ";
          Rational e(static_cast<std::int64_t>(i) - k);
          if (e.is_zero()) {
            out += std::to_string(f.num[i]);
          } else {
            if (f.num[i] != 1) out += std::to_string(f.num[i]) + "*";
            out += render_t_power(e);
          }
        }
        return out;
      }
      auto wrap = [](const Fp& a) { return term_count(a) > 1 ? "(" + fp_render(a) + ")" : fp_render(a); };
      return wrap(f.num) + "/" + wrap(f.den);
    }
    case FieldKind::puiseux: return series().literal();
  }
  return "?";
}

bool FieldElem::is_compound() const {
  switch (desc_.kind) {
    case FieldKind::prime_field: return false;
    case FieldKind::rationals_padic: return false;
    case FieldKind::ratfunc_tadic: return is_monomial(ratfunc().den) && term_count(ratfunc().num) > 1;
    case FieldKind::puiseux: return series().terms().size() > 1;
  }
  return false;
}

HahnSeries FieldElem::to_series(std::int64_t precision) const {
  const std::uint32_t p = desc_.p;
  switch (desc_.kind) {
    case FieldKind::prime_field: return HahnSeries::constant(p, residue());
    case FieldKind::puiseux: return series();
    case FieldKind::rationals_padic:
      throw Error(ErrorKind::FieldMismatch, "Q has no image in series over F_p");
    case FieldKind::ratfunc_tadic: {
      const auto& f = ratfunc();
      if (f.num.empty()) return HahnSeries(p);
      const std::size_t k = fp_ord(f.den);
      Fp unit(f.den.begin() + static_cast<std::ptrdiff_t>(k), f.den.end());
      std::vector<HahnTerm> terms;
      if (unit.size() == 1) {
        for (std::size_t i = 0; i < f.num.size(); ++i) {
          if (f.num[i]) terms.push_back({Rational(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(k)), f.num[i]});
        }
        return HahnSeries::from_terms(p, std::move(terms));
      }
      // num * unit^{-1} mod t^N, then shift by -k
      const std::int64_t n_terms = precision + static_cast<std::int64_t>(k);
      if (n_terms <= 0) return HahnSeries::from_terms(p, {}, Value(precision));
      const std::size_t n = static_cast<std::size_t>(n_terms);
      Fp inv(n, 0);
      const std::uint32_t u0 = inv_mod(unit[0], p);
      inv[0] = u0;
      for (std::size_t i = 1; i < n; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 1; j <= i && j < unit.size(); ++j) acc = (acc + static_cast<std::uint64_t>(unit[j]) * inv[i - j]) % p;
        inv[i] = static_cast<std::uint32_t>((p - acc) % p * u0 % p);
      }
      Fp prod = fp_mul(f.num, inv, p);
      for (std::size_t i = 0; i < std::min(prod.size(), n); ++i) {
        if (prod[i]) terms.push_back({Rational(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(k)), prod[i]});
      }
      return HahnSeries::from_terms(p, std::move(terms), Value(precision));
    }
  }
  return HahnSeries(p);
}

FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
    case FieldOp::inv: return a.inverse();
  }
  return a;
}

Value base_valuation(const FieldElem& a) {
  if (a.is_zero()) return Value::infinity();
  const auto& d = a.descriptor();
  switch (d.kind) {
    case FieldKind::prime_field: return Value(0);
    case FieldKind::rationals_padic:
      return Value(padic_ord(a.rational().num(), d.p) - padic_ord(a.rational().den(), d.p));
    case FieldKind::ratfunc_tadic:
      return Value(static_cast<std::int64_t>(fp_ord(a.ratfunc().num)) - static_cast<std::int64_t>(fp_ord(a.ratfunc().den)));
    case FieldKind::puiseux: return a.series().valuation();
  }
  return Value::infinity();
}

}  // namespace keypoly

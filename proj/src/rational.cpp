#include "keypoly/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>

namespace keypoly {
namespace checked {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min() + 1) {
    throw Error(ErrorKind::Overflow, "integer result exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t add(std::int64_t a, std::int64_t b) { return narrow(static_cast<__int128>(a) + b); }
std::int64_t sub(std::int64_t a, std::int64_t b) { return narrow(static_cast<__int128>(a) - b); }
std::int64_t mul(std::int64_t a, std::int64_t b) { return narrow(static_cast<__int128>(a) * b); }

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    r = r * (n - k + i);
    r /= i;
    narrow(r);
  }
  return narrow(r);
}

}  // namespace checked

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v <= std::numeric_limits<std::int64_t>::max() && v > std::numeric_limits<std::int64_t>::min();
}

}  // namespace

Rational make_reduced(std::int64_t n, std::int64_t d) noexcept { return Rational(n, d, Rational::Reduced{}); }

namespace {

Rational make(__int128 n, __int128 d) {
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) return make_reduced(0, 1);
  if (fits64(n) && fits64(d)) {
    // 64-bit gcd is much cheaper than the 128-bit one.
    std::int64_t nn = static_cast<std::int64_t>(n), dd = static_cast<std::int64_t>(d);
    std::int64_t g = std::gcd(nn, dd);
    return make_reduced(nn / g, dd / g);
  }
  __int128 g = gcd128(n, d);
  return make_reduced(checked::narrow(n / g), checked::narrow(d / g));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  __int128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  __int128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  if (nn == 0) dd = 1;
  num_ = checked::narrow(nn);
  den_ = checked::narrow(dd);
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Rational Rational::operator-() const { return make_reduced(checked::narrow(-static_cast<__int128>(num_)), den_); }

Rational Rational::inverse() const {
  if (num_ == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return make(static_cast<__int128>(a.num_) + b.num_, a.den_);
  return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
  return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first == std::string::npos) throw Error(ErrorKind::Parse, "empty rational");
  std::string s = text.substr(first, last - first + 1);
  auto to_int = [&](const std::string& part) -> std::int64_t {
    if (part.empty()) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
    for (std::size_t j = i; j < part.size(); ++j) {
      if (part[j] < '0' || part[j] > '9') throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
    }
    try {
      return std::stoll(part);
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::Overflow, "rational literal out of range '" + s + "'");
    }
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(to_int(s));
  std::string den = s.substr(slash + 1);
  if (!den.empty() && (den[0] == '-' || den[0] == '+')) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
  return Rational(to_int(s.substr(0, slash)), to_int(den));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace keypoly

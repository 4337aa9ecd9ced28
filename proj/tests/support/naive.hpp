#pragma once

// Test-side reference implementations. Nothing here calls into the library's
// algorithms; only its value types are reused so results can be compared.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "keypoly/field.hpp"
#include "keypoly/poly.hpp"
#include "keypoly/value.hpp"

namespace naive {

using keypoly::Rational;

/// Exact finite sum of c*t^e over F_p, kept as a map exponent -> residue.
struct Series {
  std::uint32_t p = 2;
  std::map<Rational, std::uint32_t> terms;

  static Series mono(std::uint32_t p, Rational e, std::uint32_t c = 1) {
    Series s{p, {}};
    c %= p;
    if (c) s.terms[e] = c;
    return s;
  }

  Series operator+(const Series& o) const {
    Series r = *this;
    for (const auto& [e, c] : o.terms) {
      std::uint32_t v = (r.terms[e] + c) % p;
      if (v) r.terms[e] = v;
      else r.terms.erase(e);
    }
    return r;
  }
  Series operator-() const {
    Series r = *this;
    for (auto& [e, c] : r.terms) c = p - c;
    return r;
  }
  Series operator-(const Series& o) const { return *this + (-o); }
  Series operator*(const Series& o) const {
    Series r{p, {}};
    for (const auto& [e1, c1] : terms) {
      for (const auto& [e2, c2] : o.terms) r = r + mono(p, e1 + e2, static_cast<std::uint32_t>((std::uint64_t{c1} * c2) % p));
    }
    return r;
  }
  /// Least exponent; nullopt for zero.
  std::optional<Rational> val() const {
    if (terms.empty()) return std::nullopt;
    return terms.begin()->first;
  }
};

/// sum_{i=1..k} t^(-1/p^i)
inline Series root_partial(std::uint32_t p, int k) {
  Series s{p, {}};
  std::int64_t den = 1;
  for (int i = 1; i <= k; ++i) {
    den *= p;
    s = s + Series::mono(p, Rational(-1, den));
  }
  return s;
}

inline Series pow(const Series& s, int e) {
  Series r = Series::mono(s.p, Rational(0));
  for (int i = 0; i < e; ++i) r = r * s;
  return r;
}

/// Pascal triangle rows 0..n over the integers.
inline std::vector<std::vector<std::int64_t>> pascal(int n) {
  std::vector<std::vector<std::int64_t>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[i].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return t;
}

/// Hasse derivative read straight off the definition with a Pascal table.
inline keypoly::Poly hasse(const keypoly::Poly& f, int b) {
  using keypoly::FieldElem;
  if (f.degree() < b) return keypoly::Poly(f.field());
  auto tri = pascal(f.degree());
  std::vector<FieldElem> out;
  for (int k = b; k <= f.degree(); ++k) {
    std::int64_t c = tri[k][b];
    if (f.field().characteristic()) c %= f.field().p;
    out.push_back(f.coeff(k) * FieldElem::from_int(f.field(), c));
  }
  return keypoly::Poly(f.field(), out);
}

/// Brute force over an explicit increasing list: the strict argmin of
/// beta_i + slope_i*gamma at the last entry (nullopt on a tie), and the last
/// list index where that candidate is not strictly below all others.
struct BruteMinimizer {
  std::optional<std::size_t> winner;
  bool certified = false;  // winner also dominates at the second-to-last entry
  std::int64_t threshold = 0;
};

inline BruteMinimizer brute_minimizer(const std::vector<std::pair<Rational, std::int64_t>>& terms,
                                      const std::vector<Rational>& gamma, std::int64_t first_index) {
  auto strictly_best = [&](const Rational& g) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    Rational bv;
    bool tie = false;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Rational v = terms[i].first + Rational(terms[i].second) * g;
      if (!best || v < bv) {
        best = i;
        bv = v;
        tie = false;
      } else if (v == bv) {
        tie = true;
      }
    }
    if (tie) return std::nullopt;
    return best;
  };
  BruteMinimizer out;
  out.threshold = first_index;
  out.winner = strictly_best(gamma.back());
  if (!out.winner) return out;
  out.certified = gamma.size() >= 2 && strictly_best(gamma[gamma.size() - 2]) == out.winner;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    if (strictly_best(gamma[k]) != out.winner) out.threshold = first_index + static_cast<std::int64_t>(k);
  }
  return out;
}

/// Seeded generators over the four coefficient fields used in the tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  keypoly::FieldElem elem(const keypoly::FieldDescriptor& f) {
    using keypoly::FieldElem;
    using keypoly::FieldKind;
    switch (f.kind) {
      case FieldKind::rationals_padic: {
        std::int64_t d = range(1, 4);
        return FieldElem::from_rational(f, Rational(range(-6, 6), d));
      }
      case FieldKind::ratfunc_tadic: {
        std::vector<std::uint32_t> num, den;
        for (int i = 0, n = static_cast<int>(range(1, 3)); i < n; ++i) num.push_back(static_cast<std::uint32_t>(range(0, f.p - 1)));
        // Monic denominator, so never zero.
        for (int i = 0, n = static_cast<int>(range(0, 2)); i < n; ++i) den.push_back(static_cast<std::uint32_t>(range(0, f.p - 1)));
        den.push_back(1);
        return FieldElem::from_ratfunc(f, num, den);
      }
      default:
        return FieldElem::from_int(f, range(0, f.p - 1));
    }
  }

  keypoly::Poly poly(const keypoly::FieldDescriptor& f, int max_degree) {
    std::vector<keypoly::FieldElem> c;
    for (int k = 0, n = static_cast<int>(range(0, max_degree)); k <= n; ++k) c.push_back(elem(f));
    return keypoly::Poly(f, c);
  }

  keypoly::Poly monic(const keypoly::FieldDescriptor& f, int degree) {
    std::vector<keypoly::FieldElem> c;
    for (int k = 0; k < degree; ++k) c.push_back(elem(f));
    c.push_back(keypoly::FieldElem::one(f));
    return keypoly::Poly(f, c);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<keypoly::FieldDescriptor> test_fields() {
  using keypoly::FieldDescriptor;
  using keypoly::FieldKind;
  return {FieldDescriptor::make(FieldKind::rationals_padic, 2), FieldDescriptor::make(FieldKind::prime_field, 2),
          FieldDescriptor::make(FieldKind::prime_field, 3), FieldDescriptor::make(FieldKind::ratfunc_tadic, 2)};
}

}  // namespace naive

#include "keypoly/value.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace keypoly {

const Rational& Value::rational() const {
  if (!finite_) throw Error(ErrorKind::Precondition, "infinite value has no rational part");
  return *finite_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  return *a.finite_ <=> *b.finite_;
}

std::string Value::str() const { return finite_ ? finite_->str() : "inf"; }

Value Value::parse(const std::string& text) {
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first == std::string::npos) throw Error(ErrorKind::Parse, "empty value");
  std::string s = text.substr(first, last - first + 1);
  if (s == "inf" || s == "oo" || s == "infinity") return infinity();
  return Value(Rational::parse(s));
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

Value operator+(const Value& a, const Value& b) {
  if (a.is_infinite() || b.is_infinite()) return Value::infinity();
  return Value(a.rational() + b.rational());
}

Value operator-(const Value& a, const Value& b) {
  if (b.is_infinite()) {
    throw Error(ErrorKind::UndefinedDifference, a.is_infinite() ? "inf - inf" : "finite - inf");
  }
  if (a.is_infinite()) return Value::infinity();
  return Value(a.rational() - b.rational());
}

Value operator-(const Value& a) {
  if (a.is_infinite()) throw Error(ErrorKind::UndefinedDifference, "-inf is not in the value group");
  return Value(-a.rational());
}

Value vg_arith(const Value& a, const Value& b, VgOp op) {
  switch (op) {
    case VgOp::add: return a + b;
    case VgOp::sub: return a - b;
    case VgOp::negate: return -a;
  }
  return a;
}

Value vg_scale(const Value& a, std::int64_t k) {
  if (a.is_infinite()) {
    if (k == 0) throw Error(ErrorKind::UndefinedProduct, "0 * inf");
    if (k < 0) throw Error(ErrorKind::UndefinedDifference, "negative multiple of inf");
    return a;
  }
  return Value(a.rational() * Rational(k));
}

Value vg_divide(const Value& a, std::int64_t k) {
  if (k <= 0) throw Error(ErrorKind::Precondition, "division of a value by a non-positive integer");
  if (a.is_infinite()) return a;
  return Value(a.rational() / Rational(k));
}

GammaSequence GammaSequence::from_list(std::vector<Rational> values, std::int64_t first_index) {
  GammaSequence g;
  g.first_index = first_index;
  g.explicit_values = std::move(values);
  return g;
}

GammaSequence GammaSequence::closed_form(std::function<Rational(std::int64_t)> gen, std::optional<Rational> bound,
                                         std::int64_t first_index) {
  GammaSequence g;
  g.first_index = first_index;
  g.generator = std::move(gen);
  g.bound = bound;
  return g;
}

namespace {

constexpr std::int64_t kMaxScan = 1'000'000;

Rational affine(const AffineTerm& t, const Rational& gamma) { return t.beta + Rational(t.slope) * gamma; }

/// Position of the strict minimum at gamma, or nullopt on a tie.
std::optional<std::size_t> strict_argmin(const std::vector<AffineTerm>& terms, const Rational& gamma) {
  std::size_t best = 0;
  bool tie = false;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    auto c = affine(terms[i], gamma) <=> affine(terms[best], gamma);
    if (c < 0) {
      best = i;
      tie = false;
    } else if (c == 0) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return best;
}

bool dominates(const std::vector<AffineTerm>& terms, std::size_t b, const Rational& gamma) {
  Rational vb = affine(terms[b], gamma);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i != b && !(affine(terms[i], gamma) > vb)) return false;
  }
  return true;
}

}  // namespace

MinimizerResult kaplansky_minimizer(const MinimizerInput& input) {
  const auto& terms = input.terms;
  const auto& gamma = input.gamma;
  if (terms.empty()) throw Error(ErrorKind::Precondition, "minimizer needs at least one candidate");
  std::set<std::int64_t> slopes;
  for (const auto& t : terms) {
    if (t.slope <= 0) throw Error(ErrorKind::Precondition, "slopes must be positive");
    if (!slopes.insert(t.slope).second) throw Error(ErrorKind::Precondition, "slopes must be distinct");
  }

  if (gamma.is_explicit()) {
    const auto& g = gamma.explicit_values;
    for (std::size_t k = 1; k < g.size(); ++k) {
      if (!(g[k - 1] < g[k])) throw Error(ErrorKind::Precondition, "gamma list is not strictly increasing");
    }
    if (gamma.bound) {
      for (const auto& v : g) {
        if (!(v < *gamma.bound)) throw Error(ErrorKind::Precondition, "gamma list reaches its declared bound");
      }
    }
    MinimizerResult res;
    res.horizon_certified_only = true;
    res.threshold = gamma.first_index;
    if (terms.size() == 1) return res;
    if (g.size() < 2) throw Error(ErrorKind::NoEventualMinimizer, "need at least two gamma entries to certify");
    auto last = strict_argmin(terms, g.back());
    if (!last) throw Error(ErrorKind::NoEventualMinimizer, "tie at the last gamma entry");
    if (!dominates(terms, *last, g[g.size() - 2])) {
      throw Error(ErrorKind::NoEventualMinimizer, "winner at the last entry does not dominate at the one before");
    }
    res.position = *last;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!dominates(terms, res.position, g[k])) {
        res.threshold = std::max(res.threshold, gamma.first_index + static_cast<std::int64_t>(k));
      }
    }
    return res;
  }

  // Closed form: pick the winner from the limiting behaviour, then scan for
  // the last index where it does not yet dominate.
  std::size_t b = 0;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (gamma.bound) {
      Rational vi = affine(terms[i], *gamma.bound);
      Rational vb = affine(terms[b], *gamma.bound);
      if (vi < vb || (vi == vb && terms[i].slope > terms[b].slope)) b = i;
    } else if (terms[i].slope < terms[b].slope) {
      b = i;
    }
  }
  std::optional<Rational> lower;  // winner needs gamma > lower
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == b || terms[i].slope < terms[b].slope) continue;
    Rational t = (terms[b].beta - terms[i].beta) / Rational(terms[i].slope - terms[b].slope);
    if (!lower || *lower < t) lower = t;
  }
  MinimizerResult res;
  res.position = b;
  res.threshold = gamma.first_index;
  if (!lower) return res;
  std::optional<Rational> prev;
  for (std::int64_t k = 0; k < kMaxScan; ++k) {
    std::int64_t idx = gamma.first_index + k;
    Rational v = gamma.generator(idx);
    if (prev && !(*prev < v)) throw Error(ErrorKind::Precondition, "gamma generator is not strictly increasing");
    if (gamma.bound && !(v < *gamma.bound)) throw Error(ErrorKind::Precondition, "gamma generator reaches its bound");
    prev = v;
    if (*lower < v) {
      if (!dominates(terms, b, v)) throw Error(ErrorKind::NoEventualMinimizer, "closed-form winner fails to dominate");
      return res;
    }
    res.threshold = std::max(res.threshold, idx);
  }
  throw Error(ErrorKind::NoEventualMinimizer, "threshold not reached within the scan limit");
}

}  // namespace keypoly

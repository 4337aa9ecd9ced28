#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "keypoly/rational.hpp"

namespace keypoly {

/**
 * Element of the value group Q together with +infinity.
 *
 * Infinity is strictly greater than every finite value and absorbs addition.
 * Differences and products that would need an "infinity minus infinity" or
 * "zero times infinity" raise instead of guessing.
 */
class Value {
 public:
  Value() = default;  // zero
  Value(Rational r) : finite_(r) {}  // NOLINT(google-explicit-constructor)
  Value(std::int64_t n) : finite_(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  Value(std::int64_t n, std::int64_t d) : finite_(Rational(n, d)) {}

  static Value infinity() {
    Value v;
    v.finite_.reset();
    return v;
  }

  bool is_infinite() const noexcept { return !finite_.has_value(); }
  bool is_finite() const noexcept { return finite_.has_value(); }

  /// Throws Precondition on infinity.
  const Rational& rational() const;

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  /// `inf`, `n` or `n/d`.
  std::string str() const;
  /// Accepts the output of str() (also `oo` and `infinity`).
  static Value parse(const std::string& text);

 private:
  std::optional<Rational> finite_ = Rational(0);
};

std::ostream& operator<<(std::ostream& os, const Value& v);

Value operator+(const Value& a, const Value& b);
/// inf - finite = inf; finite - inf and inf - inf raise UndefinedDifference.
Value operator-(const Value& a, const Value& b);
/// Negating infinity raises UndefinedDifference.
Value operator-(const Value& a);

enum class VgOp { add, sub, negate };

/// Single entry point mirroring the operation table of the value group.
Value vg_arith(const Value& a, const Value& b, VgOp op);

/// k * a. k * inf = inf for k > 0; 0 * inf raises UndefinedProduct,
/// negative multiples of inf raise UndefinedDifference.
Value vg_scale(const Value& a, std::int64_t k);

/// Exact division by a positive integer.
Value vg_divide(const Value& a, std::int64_t k);

inline const Value& min(const Value& a, const Value& b) { return b < a ? b : a; }
inline const Value& max(const Value& a, const Value& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// Eventual minimizer of finitely many affine functions along an increasing
// sequence without last element.

/// One affine candidate gamma -> beta + slope * gamma.
struct AffineTerm {
  Rational beta;
  std::int64_t slope = 1;
};

/// Increasing sequence of values indexed from `first_index`. Either an
/// explicit finite list, or a closed-form generator with an optional strict
/// upper bound (no bound means the sequence is unbounded).
struct GammaSequence {
  std::int64_t first_index = 1;
  std::vector<Rational> explicit_values;
  std::function<Rational(std::int64_t)> generator;
  std::optional<Rational> bound;

  bool is_explicit() const { return !generator; }
  static GammaSequence from_list(std::vector<Rational> values, std::int64_t first_index = 1);
  static GammaSequence closed_form(std::function<Rational(std::int64_t)> gen, std::optional<Rational> bound,
                                   std::int64_t first_index = 1);
};

struct MinimizerInput {
  std::vector<AffineTerm> terms;
  GammaSequence gamma;
};

struct MinimizerResult {
  /// 0-based position of the eventual strict minimizer in `terms`.
  std::size_t position = 0;
  /// Every sequence index sigma > threshold has the winner strictly below all
  /// other candidates. Never below the first index of the sequence.
  std::int64_t threshold = 0;
  /// True when derived from a finite list only (valid up to its last entry).
  bool horizon_certified_only = false;
};

/// Throws NoEventualMinimizer when no strict winner can be certified, and
/// Precondition when slopes repeat or the sequence is not increasing.
MinimizerResult kaplansky_minimizer(const MinimizerInput& input);

}  // namespace keypoly

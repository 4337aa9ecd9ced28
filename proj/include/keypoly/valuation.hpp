#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "keypoly/hahn.hpp"
#include "keypoly/poly.hpp"

namespace keypoly {

/// nu(sum c_k x^k) = min_k (base_valuation(c_k) + k*mu).
struct GaussBackend {
  Value mu;
};

struct Augmentation {
  Poly key;  // monic
  Value gamma;
};

/// Iterated augmentation starting from gauss(base_mu):
///   nu_{i+1}(f) = min_j nu_i(a_j) + j*gamma_{i+1} over the key_{i+1}-expansion.
struct ChainBackend {
  Value base_mu;
  std::vector<Augmentation> steps;
};

/// nu(f) = least exponent of f(s), coefficients mapped into series over F_p.
struct SeriesBackend {
  HahnSeries point;
};

/**
 * A computable rank-one valuation on K[x].
 *
 * Construction validates the backend: chain steps must be proper
 * augmentations (gamma_{i+1} > nu_i(key_{i+1})), and the series backend is
 * only available for F_p, F_p(t) and puiseux coefficient fields over the
 * same prime as the evaluation point. Values are immutable once built.
 */
class PxValuation {
 public:
  using Backend = std::variant<GaussBackend, ChainBackend, SeriesBackend>;

  PxValuation(FieldDescriptor field, Backend backend);

  static PxValuation gauss(FieldDescriptor field, Value mu) { return PxValuation(field, GaussBackend{mu}); }
  static PxValuation series(FieldDescriptor field, HahnSeries point) {
    return PxValuation(field, SeriesBackend{std::move(point)});
  }

  const FieldDescriptor& field() const noexcept { return field_; }
  const Backend& backend() const noexcept { return backend_; }

  /// Raises InsufficientPrecision (series backend) when the value is not
  /// certified below the precision of the evaluation point.
  Value operator()(const Poly& f) const;

  /// f(s) for the series backend; exposed for certificates and tests.
  HahnSeries evaluate_series(const Poly& f) const;

  std::string describe() const;

 private:
  Value chain_value(const Poly& f, std::size_t depth) const;
  Value series_value(const Poly& f, const HahnSeries& point) const;

  FieldDescriptor field_;
  Backend backend_;
};

Value nu_eval(const PxValuation& v, const Poly& f);

struct EpsilonRow {
  int order = 0;
  Value nu_derivative;            // nu(d_b f); inf when the derivative vanishes
  std::optional<Rational> ratio;  // (nu f - nu d_b f) / b; empty when skipped
};

struct EpsilonReport {
  Rational epsilon;
  std::vector<int> attaining;  // I(f)
  Value nu_f;
  std::vector<EpsilonRow> rows;
};

/// epsilon(f) = max over 1 <= b <= deg f of (nu f - nu d_b f) / b; orders
/// whose Hasse derivative vanishes are skipped. Requires deg f >= 1.
EpsilonReport epsilon(const PxValuation& v, const Poly& f);

struct KeyProbeResult {
  bool counterexample_found = false;
  std::optional<Poly> counterexample;
  /// Only meaningful when no counterexample was found: a sampling outcome,
  /// never a proof of key-ness.
  std::size_t probes_checked = 0;
};

/// Scans `corpus` for f with deg f < deg Q and epsilon(f) >= epsilon(Q).
/// Constants have no epsilon and are never counterexamples.
KeyProbeResult is_key_sampled(const PxValuation& v, const Poly& key, const std::vector<Poly>& corpus);

}  // namespace keypoly

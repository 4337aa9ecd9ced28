#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "keypoly/valuation.hpp"

namespace keypoly {

/// Closed form sum_{i=1..terms} t^(-1/p^i): the partial sums of the root
/// of the Artin-Schreier polynomial x^p - x - t^-1.
struct RootTail {
  int terms = 0;
  friend bool operator==(const RootTail&, const RootTail&) = default;
};

struct SeriesSpec {
  std::variant<RootTail, HahnSeries> point;  // closed form or explicit exact terms
  Value precision = Value::infinity();
  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

struct GaussSpec {
  Value mu;
  friend bool operator==(const GaussSpec&, const GaussSpec&) = default;
};

/**
 * Everything a scenario file declares, in typed canonical form.
 *
 * File syntax: one `key: value` per line, `#` starts a comment, keys in any
 * order. serialize() writes the canonical key order, so
 * parse -> serialize -> parse is the identity.
 *
 *   name: as2
 *   field: F2<t>
 *   valuation: series            (or `gauss <mu>`)
 *   series: root_tail 12         (or an exact literal such as `t^(-1/2) + t^(-1/4)`)
 *   series_precision: 8
 *   n: 1
 *   chain: root_tail 8           (or `list`, followed by chain.1, chain.2, ...)
 *   F: x^2 + x + t^-1
 *   q0_index: 1
 *   q_index: auto                (or an explicit chain index)
 *   declared_B: 0
 *   declared_Bbar: 0
 *   usable_horizon: 8
 *   corpus_seed: 20181019
 *   corpus_size: 50
 */
struct ScenarioSpec {
  std::string name;
  FieldDescriptor field;
  std::variant<SeriesSpec, GaussSpec> valuation;
  int n = 1;
  std::variant<RootTail, std::vector<Poly>> chain;
  Poly limit_key;
  int q0_index = 1;
  std::optional<int> q_index;
  Value declared_B;
  Value declared_Bbar;
  int usable_horizon = 0;
  std::uint64_t corpus_seed = 0;
  int corpus_size = 50;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

ScenarioSpec parse_scenario(const std::string& text);
ScenarioSpec load_scenario_file(const std::string& path);
std::string serialize_scenario(const ScenarioSpec& spec);

/**
 * A finite-horizon model of a family of degree-n key polynomials with
 * strictly increasing values, the declared limits B and Bbar, and a limit
 * key polynomial F. Chain indices are 1-based: key(1) is Q_1.
 *
 * Construction evaluates gamma_k = nu(Q_k) once; an index whose value is not
 * certified by the valuation is recorded and reported by validation.
 */
class LimitScenario {
 public:
  explicit LimitScenario(ScenarioSpec spec);

  const ScenarioSpec& spec() const noexcept { return spec_; }
  const FieldDescriptor& field() const noexcept { return spec_.field; }
  std::uint32_t p() const noexcept { return spec_.field.p; }
  const PxValuation& valuation() const noexcept { return valuation_; }
  Value nu(const Poly& f) const { return valuation_(f); }

  int n() const noexcept { return spec_.n; }
  int chain_length() const noexcept { return static_cast<int>(chain_.size()); }
  int horizon() const noexcept { return spec_.usable_horizon; }
  const Poly& key(int k) const;
  /// gamma_k = nu(Q_k); raises InsufficientPrecision when uncertified.
  const Value& gamma(int k) const;
  bool gamma_certified(int k) const;

  const Poly& limit_key() const noexcept { return spec_.limit_key; }
  const Value& B() const noexcept { return spec_.declared_B; }
  const Value& Bbar() const noexcept { return spec_.declared_Bbar; }
  int q0_index() const noexcept { return spec_.q0_index; }

 private:
  ScenarioSpec spec_;
  PxValuation valuation_;
  std::vector<Poly> chain_;
  std::vector<std::optional<Value>> gammas_;
};

PxValuation build_valuation(const ScenarioSpec& spec);
std::vector<Poly> build_chain(const ScenarioSpec& spec);
HahnSeries root_tail_series(std::uint32_t p, int terms, const Value& precision);

/// Corpus for quantified checks: monomials x^k (k < deg F), every chain key,
/// F itself, and `corpus_size` seeded pseudorandom polynomials with small
/// supports. Deterministic for a given scenario on every platform.
std::vector<Poly> scenario_corpus(const LimitScenario& s);

}  // namespace keypoly

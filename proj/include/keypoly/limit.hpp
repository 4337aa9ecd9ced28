#pragma once

#include <optional>
#include <string>
#include <vector>

#include "keypoly/expansion.hpp"
#include "keypoly/scenario.hpp"

namespace keypoly {

struct ValidationIssue {
  std::string reason;
  int index = 0;  // witness chain index; 0 when the issue is not tied to one
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  /// One `index: reason` line per issue.
  std::string str() const;
};

/// Checks every standing assumption of a scenario and lists each failure.
ValidationReport validate_scenario(const LimitScenario& s);
/// Raises InvalidScenario carrying the first failure (and the issue count).
void require_valid(const LimitScenario& s);

/// nu_{Q_k}(f) with its certificate.
TruncationReport truncation_at(const LimitScenario& s, const Poly& f, int k);

/// d = deg_X F with respect to Q_{q0_index}.
int limit_degree(const LimitScenario& s);

struct BaseRow {
  int index = 0;
  Rational gain;     // eps(Q_k) - eps(Q_0)
  Value bound_B;     // d (B - nu(Q_k))
  Value bound_Bbar;  // Bbar - nu_{Q_k}(F)
  bool ok = false;
};

struct BaseChoice {
  int index = 0;
  Rational eps_q0;
  std::vector<BaseRow> rows;  // every scanned index up to the chosen one
};

/// Least k > q0_index satisfying both base inequalities; HorizonExhausted if
/// none up to the horizon.
BaseChoice explain_base_q(const LimitScenario& s);
int choose_base_q(const LimitScenario& s);
/// The declared q_index, or choose_base_q when the scenario says `auto`.
int base_index(const LimitScenario& s);

/// h_rho = Q_base - Q_rho.
Poly h_at(const LimitScenario& s, int base, int rho);

struct StableResult {
  bool stable = false;
  int index = 0;  // least k with nu_{Q_k}(f) = nu(f)
  Value nu_f;
  std::optional<TruncationReport> certificate;
  std::string note;
};

/// Horizon-relative stability. For deg f < deg F the certificate must also
/// show 0 in S_{Q_k}(f).
StableResult is_stable_at_horizon(const LimitScenario& s, const Poly& f);

struct FixedRow {
  int rho = 0;
  Value nu_l_h;        // nu(l(h_rho))
  Value nu_l_minus_h;  // nu(l(-h_rho))
};

struct FixedResult {
  bool fixed = false;
  int witness = 0;                     // first rho with nu(f) = nu(l(h_rho))
  std::optional<int> witness_minus;    // same with -h_rho
  int base = 0;
  XPoly l;
  Value nu_f;
  std::vector<FixedRow> rows;          // every scanned rho, up to the horizon
};

FixedResult is_fixed(const LimitScenario& s, const Poly& f);
FixedResult is_fixed(const LimitScenario& s, const Poly& f, int base);

struct PPowerSplit {
  int d = 0;
  std::vector<int> I;  // powers of p in [1, d]
  std::vector<int> J;  // the rest of [1, d]
};

PPowerSplit ppower_split(int d, std::uint32_t p);

struct ThresholdReport {
  int base = 0;
  XPoly L;
  PPowerSplit split;
  /// beta_i = nu(d_i L(h_H)) for i = 1..d (entry 0 unused); inf when the
  /// derivative vanishes.
  std::vector<Value> beta;
  int beta_settled = 0;        // last rho where some beta_i(rho) differs from beta_i(H)
  int winner = 0;              // b of the eventual minimizer of beta_i + i gamma
  int minimizer_threshold = 0;
  int gap_threshold = 0;
  int sigma = 0;               // max of the above and the base index
};

/// The tail index after which the constructions are certified.
ThresholdReport theorem_threshold(const LimitScenario& s);

struct FpRow {
  int rho = 0;
  Value nu_L;       // nu(L(h_rho))
  Value nu_Lp;      // nu(L_p(h_rho))
  Value nu_diff;    // nu(L(h_rho) - L_p(h_rho))
  int b = 0;
  Value beta_b;
  Value predicted;  // beta_b + b gamma_rho
  bool dominance = false;
  bool explicit_value = false;  // nu_L == predicted
};

struct FpCertificate {
  Poly output;
  XPoly Lp;  // L(h_theta) + sum_{i in I} d_iL(h_theta) (X - h_theta)^i
  int theta = 0;
  ThresholdReport threshold;
  std::vector<FpRow> rows;
  bool monic = false;
  bool degree_preserved = false;
  bool dominance = false;
  bool explicit_value = false;
  bool compose_agrees = false;  // L_p(Q) == F_p
  /// Every J-derivative of L vanishes at h_theta, so L_p(h_rho) = L(h_rho).
  bool j_degenerate = false;
  bool equals_F = false;
};

/// Raises Precondition when theta <= sigma, HorizonExhausted when no tail
/// index remains, CertificateFailed when a check fails.
FpCertificate construct_fp(const LimitScenario& s, int theta);

struct BoundRow {
  int i = 0;
  Value lhs;  // nu_theta(d_iL(h_theta) - a_i0) + i gamma_theta
  bool vacuous = false;  // the difference is zero
  bool ok = false;
};

struct FpBarTailRow {
  int rho = 0;
  Value nu_diff;  // nu_rho(F_p - Fbar_p)
  Value nu_F;     // nu_rho(F)
  bool ok = false;
};

struct FpBarCertificate {
  Poly output;
  int theta = 0;
  std::vector<Poly> a;  // a_i for i = 0..d; zero outside I and 0
  PPowerSplit split;
  std::vector<BoundRow> bound_rows;
  std::vector<FpBarTailRow> rows;
  bool degrees_ok = false;   // deg a_i < n
  bool leading_one = false;  // a_d = 1
  bool support_ok = false;   // Q_theta-expansion supported on I and 0
  bool tail_ok = false;
  bool equals_F = false;
};

FpBarCertificate construct_fp_bar(const LimitScenario& s, int theta);

/// Gap inequality data for one pair.
struct GapInput {
  std::uint32_t p = 2;
  int i = 1;
  int j = 2;
  Value beta_i;
  Value beta_j;
  GammaSequence gamma;  // explicit list
  Value C;
};

struct GapRecord {
  int i = 0;
  int j = 0;
  bool vacuous = false;
  bool holds = false;
  /// Holds for every listed sigma > threshold.
  std::int64_t threshold = 0;
  std::vector<std::int64_t> violations;
  Value lhs_C;
  Value rhs_C;
  bool at_C = false;
};

/// Raises Precondition for an inadmissible pair, VacuouslyTrue when beta_j is
/// infinite.
GapRecord gap_inequality(const GapInput& in);

/// Every admissible pair of the scenario, with beta from theorem_threshold.
/// Pairs with a vanishing d_jL come back marked vacuous. Raises VacuouslyTrue
/// when there is no admissible pair at all.
std::vector<GapRecord> gap_scenario(const LimitScenario& s);

/// The gamma values gamma_first..gamma_last as an explicit sequence.
GammaSequence gamma_tail(const LimitScenario& s, int first, int last);

}  // namespace keypoly

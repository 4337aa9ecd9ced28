#pragma once

#include <vector>

#include "keypoly/valuation.hpp"

namespace keypoly {

/// f = a_0 + a_1 Q + ... + a_r Q^r with deg a_i < deg Q.
struct QExpansion {
  Poly key;
  std::vector<Poly> coeffs;  // a_0..a_r; empty for f = 0

  /// r = deg_X(f); -1 for f = 0.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// a_i, zero beyond r (zero-padding for expansions of different lengths).
  Poly coeff(int i) const;
  /// The same data as l(X) in K[x]_n[X].
  XPoly as_xpoly() const;
};

QExpansion q_expand(const Poly& f, const Poly& key);

struct TruncationReport {
  Value value;                // nu_Q(f)
  std::vector<Value> terms;   // nu(a_i Q^i); inf for a_i = 0
  std::vector<int> attaining; // S_Q(f)
  int delta = -1;             // max S_Q(f); -1 for f = 0

  bool attains(int i) const;
};

/// nu_Q(f) = min_i nu(a_i) + i nu(Q) over the Q-expansion.
TruncationReport truncate(const PxValuation& v, const Poly& f, const Poly& key);

/// Same, with nu(Q) already known.
TruncationReport truncate(const PxValuation& v, const QExpansion& expansion, const Value& nu_key);

/// a_{rho 0}(f): the constant coefficient of the key-expansion, i.e. f mod key.
Poly a_rho0(const Poly& f, const Poly& key);

}  // namespace keypoly

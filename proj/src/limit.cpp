#include "keypoly/limit.hpp"

#include <algorithm>
#include <sstream>

namespace keypoly {

namespace {

struct LData {
  int base = 0;
  XPoly L;
  PPowerSplit split;
  std::vector<Value> beta;  // at the horizon, index 1..d
  int beta_settled = 0;
};

std::vector<Value> betas_at(const LimitScenario& s, const XPoly& L, const Poly& h) {
  std::vector<Value> out(static_cast<std::size_t>(std::max(L.degree(), 0)) + 1, Value::infinity());
  for (int i = 1; i <= L.degree(); ++i) {
    Poly d = compose_x(hasse_derivative(L, i), h);
    out[static_cast<std::size_t>(i)] = d.is_zero() ? Value::infinity() : s.nu(d);
  }
  return out;
}

LData l_data(const LimitScenario& s) {
  LData out;
  out.base = base_index(s);
  out.L = q_expand(s.limit_key(), s.key(out.base)).as_xpoly();
  out.split = ppower_split(out.L.degree(), s.p());
  const int H = s.horizon();
  if (out.base >= H) throw Error(ErrorKind::HorizonExhausted, "no chain index above the base Q within the horizon");
  out.beta = betas_at(s, out.L, h_at(s, out.base, H));
  out.beta_settled = out.base;
  for (int rho = out.base + 1; rho < H; ++rho) {
    if (betas_at(s, out.L, h_at(s, out.base, rho)) != out.beta) out.beta_settled = rho;
  }
  return out;
}

bool admissible_pair(std::uint32_t p, int i, int j) {
  if (i < 1 || j <= i || j % i != 0) return false;
  int t = i;
  while (t % static_cast<int>(p) == 0) t /= static_cast<int>(p);
  if (t != 1) return false;
  int r = j / i;
  return r > 1 && r % static_cast<int>(p) != 0;
}

std::vector<GapRecord> gap_from(const LimitScenario& s, const LData& ld) {
  const int d = ld.L.degree();
  std::vector<GapRecord> out;
  bool any = false;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      if (!admissible_pair(s.p(), i, j)) continue;
      any = true;
      GapInput in{s.p(), i, j, ld.beta[static_cast<std::size_t>(i)], ld.beta[static_cast<std::size_t>(j)],
                      gamma_tail(s, ld.base + 1, s.horizon()), s.B()};
      try {
        out.push_back(gap_inequality(in));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::VacuouslyTrue) throw;
        GapRecord rec;
        rec.i = i;
        rec.j = j;
        rec.vacuous = true;
        rec.holds = true;
        rec.threshold = ld.base + 1;
        out.push_back(rec);
      }
    }
  }
  if (!any) throw Error(ErrorKind::VacuouslyTrue, "no admissible (i, j) pair for d = " + std::to_string(d));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string ValidationReport::str() const {
  std::ostringstream out;
  for (const auto& i : issues) out << i.index << ": " << i.reason << "\n";
  return out.str();
}

TruncationReport truncation_at(const LimitScenario& s, const Poly& f, int k) {
  return truncate(s.valuation(), q_expand(f, s.key(k)), s.gamma(k));
}

ValidationReport validate_scenario(const LimitScenario& s) {
  ValidationReport rep;
  auto issue = [&](int index, std::string reason) { rep.issues.push_back({std::move(reason), index}); };
  const int m = s.chain_length();
  const int H = s.horizon();

  if (s.n() < 1) issue(0, "n must be positive");
  if (m == 0) issue(0, "empty chain");
  if (H < 1 || H > m) issue(0, "usable_horizon " + std::to_string(H) + " outside [1, " + std::to_string(m) + "]");
  if (s.q0_index() < 1 || s.q0_index() > std::min(H, m)) issue(0, "q0_index outside the horizon");
  if (s.spec().q_index && (*s.spec().q_index <= s.q0_index() || *s.spec().q_index > std::min(H, m))) {
    issue(0, "q_index must lie in (q0_index, usable_horizon]");
  }
  if (s.B().is_infinite()) issue(0, "declared_B must be finite");
  if (s.Bbar().is_infinite()) issue(0, "declared_Bbar must be finite");
  if (!s.limit_key().is_monic()) issue(0, "F is not monic");
  if (s.limit_key().degree() < s.n()) issue(0, "deg F is below n");

  for (int k = 1; k <= m; ++k) {
    const Poly& q = s.key(k);
    if (!q.is_monic()) issue(k, "Q_" + std::to_string(k) + " is not monic");
    if (q.degree() != s.n()) issue(k, "Q_" + std::to_string(k) + " does not have degree n");
    if (!s.gamma_certified(k)) {
      if (k <= H) issue(k, "gamma_" + std::to_string(k) + " not certified by the series precision");
      continue;
    }
    if (!(s.gamma(k) < s.B())) issue(k, "gamma_" + std::to_string(k) + " = " + s.gamma(k).str() + " >= B = " + s.B().str());
    if (k > 1 && s.gamma_certified(k - 1) && !(s.gamma(k - 1) < s.gamma(k))) {
      issue(k, "gamma not increasing: gamma_" + std::to_string(k - 1) + " = " + s.gamma(k - 1).str() + ", gamma_" +
                   std::to_string(k) + " = " + s.gamma(k).str());
    }
  }
  if (!rep.ok()) return rep;

  // Pseudo-convergence nu(Q_sigma - Q_rho) = gamma_rho.
  for (int rho = 1; rho <= m; ++rho) {
    if (!s.gamma_certified(rho)) continue;
    for (int sigma = rho + 1; sigma <= m; ++sigma) {
      Value v;
      try {
        v = s.nu(s.key(sigma) - s.key(rho));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientPrecision) throw;
        if (sigma <= H) issue(sigma, "nu(Q_sigma - Q_rho) not certified");
        continue;
      }
      if (v != s.gamma(rho)) {
        issue(sigma, "not pseudo-convergent: nu(Q_" + std::to_string(sigma) + " - Q_" + std::to_string(rho) +
                         ") = " + v.str() + " != gamma_" + std::to_string(rho));
      }
    }
  }

  Value nu_F;
  try {
    nu_F = s.nu(s.limit_key());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientPrecision) throw;
    issue(0, "nu(F) not certified by the series precision");
    return rep;
  }
  for (int k = 1; k <= H && k <= m; ++k) {
    Value t = truncation_at(s, s.limit_key(), k).value;
    if (!(t < nu_F)) {
      issue(k, "F is stable at Q_" + std::to_string(k) + ": nu_Q(F) = " + t.str() + ", nu(F) = " + nu_F.str());
    }
  }
  if (rep.ok() && s.spec().q_index) {
    try {
      int chosen = choose_base_q(s);
      if (*s.spec().q_index < chosen) {
        issue(*s.spec().q_index, "declared q_index fails the base inequalities (least valid index " +
                                     std::to_string(chosen) + ")");
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HorizonExhausted) throw;
      issue(*s.spec().q_index, "no chain index satisfies the base inequalities");
    }
  }
  return rep;
}

void require_valid(const LimitScenario& s) {
  ValidationReport rep = validate_scenario(s);
  if (rep.ok()) return;
  const auto& first = rep.issues.front();
  std::string msg = first.reason;
  if (first.index > 0) msg += " (index " + std::to_string(first.index) + ")";
  if (rep.issues.size() > 1) msg += "; " + std::to_string(rep.issues.size() - 1) + " more";
  throw Error(ErrorKind::InvalidScenario, msg);
}

int limit_degree(const LimitScenario& s) { return q_expand(s.limit_key(), s.key(s.q0_index())).degree(); }

BaseChoice explain_base_q(const LimitScenario& s) {
  const PxValuation& v = s.valuation();
  const int q0 = s.q0_index();
  const int d = limit_degree(s);
  BaseChoice out;
  out.eps_q0 = epsilon(v, s.key(q0)).epsilon;
  for (int k = q0 + 1; k <= s.horizon(); ++k) {
    BaseRow row;
    row.index = k;
    row.gain = epsilon(v, s.key(k)).epsilon - out.eps_q0;
    row.bound_B = vg_scale(s.B() - s.gamma(k), d);
    row.bound_Bbar = s.Bbar() - truncation_at(s, s.limit_key(), k).value;
    row.ok = Value(row.gain) > row.bound_B && Value(row.gain) > row.bound_Bbar;
    out.rows.push_back(row);
    if (row.ok) {
      out.index = k;
      return out;
    }
  }
  throw Error(ErrorKind::HorizonExhausted,
              "no index in (" + std::to_string(q0) + ", " + std::to_string(s.horizon()) + "] satisfies the base inequalities");
}

int choose_base_q(const LimitScenario& s) { return explain_base_q(s).index; }

int base_index(const LimitScenario& s) {
  if (s.spec().q_index) return *s.spec().q_index;
  return choose_base_q(s);
}

Poly h_at(const LimitScenario& s, int base, int rho) { return s.key(base) - s.key(rho); }

// ---------------------------------------------------------------------------

StableResult is_stable_at_horizon(const LimitScenario& s, const Poly& f) {
  if (f.is_zero()) throw Error(ErrorKind::Precondition, "stability of the zero polynomial");
  StableResult out;
  out.nu_f = s.nu(f);
  const bool below_F = f.degree() < s.limit_key().degree();
  for (int k = 1; k <= s.horizon(); ++k) {
    TruncationReport t = truncation_at(s, f, k);
    if (t.value != out.nu_f) continue;
    if (below_F && !t.attains(0)) continue;
    out.stable = true;
    out.index = k;
    out.certificate = std::move(t);
    out.note = below_F ? "0 in S_Q(f)" : "nu_Q(f) = nu(f)";
    return out;
  }
  out.note = "unstable at horizon " + std::to_string(s.horizon());
  return out;
}

FixedResult is_fixed(const LimitScenario& s, const Poly& f) { return is_fixed(s, f, base_index(s)); }

FixedResult is_fixed(const LimitScenario& s, const Poly& f, int base) {
  FixedResult out;
  out.base = base;
  out.l = q_expand(f, s.key(base)).as_xpoly();
  out.nu_f = s.nu(f);
  for (int rho = base + 1; rho <= s.horizon(); ++rho) {
    if (!(s.gamma(rho) > s.gamma(base))) continue;
    Poly h = h_at(s, base, rho);
    FixedRow row{rho, s.nu(compose_x(out.l, h)), s.nu(compose_x(out.l, -h))};
    out.rows.push_back(row);
    if (!out.fixed && row.nu_l_h == out.nu_f) {
      out.fixed = true;
      out.witness = rho;
    }
    if (!out.witness_minus && row.nu_l_minus_h == out.nu_f) out.witness_minus = rho;
    if (out.fixed && out.witness_minus) break;
  }
  return out;
}

PPowerSplit ppower_split(int d, std::uint32_t p) {
  if (d < 0) throw Error(ErrorKind::Precondition, "negative degree");
  if (!is_prime(p)) throw Error(ErrorKind::Precondition, std::to_string(p) + " is not prime");
  PPowerSplit out;
  out.d = d;
  std::int64_t next = 1;
  for (int l = 1; l <= d; ++l) {
    if (l == next) {
      out.I.push_back(l);
      next *= p;
    } else {
      out.J.push_back(l);
    }
  }
  return out;
}

GammaSequence gamma_tail(const LimitScenario& s, int first, int last) {
  std::vector<Rational> g;
  for (int k = first; k <= last; ++k) g.push_back(s.gamma(k).rational());
  GammaSequence seq = GammaSequence::from_list(std::move(g), first);
  if (s.B().is_finite()) seq.bound = s.B().rational();
  return seq;
}

// ---------------------------------------------------------------------------

ThresholdReport theorem_threshold(const LimitScenario& s) {
  LData ld = l_data(s);
  ThresholdReport out;
  out.base = ld.base;
  out.L = ld.L;
  out.split = ld.split;
  out.beta = ld.beta;
  out.beta_settled = ld.beta_settled;

  MinimizerInput in;
  std::vector<int> orders;
  for (int i = 1; i <= ld.L.degree(); ++i) {
    const Value& b = ld.beta[static_cast<std::size_t>(i)];
    if (b.is_infinite()) continue;
    in.terms.push_back({b.rational(), i});
    orders.push_back(i);
  }
  if (in.terms.empty()) throw Error(ErrorKind::Precondition, "L has no nonzero derivative");
  in.gamma = gamma_tail(s, ld.base + 1, s.horizon());
  MinimizerResult mr;
  try {
    mr = kaplansky_minimizer(in);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoEventualMinimizer) throw;
    throw Error(ErrorKind::HorizonExhausted, std::string("no certified minimizer within the horizon: ") + e.what());
  }
  out.winner = orders[mr.position];
  out.minimizer_threshold = static_cast<int>(mr.threshold);

  out.gap_threshold = ld.base;
  try {
    for (const auto& rec : gap_from(s, ld)) {
      if (rec.vacuous) continue;
      if (!rec.holds) {
        throw Error(ErrorKind::HorizonExhausted, "gap inequality not established for (" + std::to_string(rec.i) +
                                                     ", " + std::to_string(rec.j) + ") within the horizon");
      }
      out.gap_threshold = std::max(out.gap_threshold, static_cast<int>(rec.threshold));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::VacuouslyTrue) throw;
  }
  out.sigma = std::max({out.base, out.beta_settled, out.minimizer_threshold, out.gap_threshold});
  return out;
}

FpCertificate construct_fp(const LimitScenario& s, int theta) {
  FpCertificate cert;
  cert.threshold = theorem_threshold(s);
  const ThresholdReport& th = cert.threshold;
  if (theta <= th.sigma) {
    throw Error(ErrorKind::Precondition,
                "theta = " + std::to_string(theta) + " must exceed the tail threshold " + std::to_string(th.sigma));
  }
  if (theta >= s.horizon()) {
    throw Error(ErrorKind::HorizonExhausted, "no certified tail index above theta = " + std::to_string(theta));
  }
  cert.theta = theta;
  const FieldDescriptor& field = s.field();
  const XPoly& L = th.L;
  const int d = L.degree();
  const Poly h_theta = h_at(s, th.base, theta);

  // L_p(X) = L(h_theta) + sum_{i in I} d_iL(h_theta) (X - h_theta)^i, with
  // coefficients in K[x] collected by powers of X.
  std::vector<Poly> lp(static_cast<std::size_t>(d) + 1, Poly(field));
  const Poly L_h_theta = compose_x(L, h_theta);
  lp[0] = L_h_theta;
  std::vector<Poly> dL(static_cast<std::size_t>(d) + 1, Poly(field));
  for (int i = 1; i <= d; ++i) dL[static_cast<std::size_t>(i)] = compose_x(hasse_derivative(L, i), h_theta);
  for (int i : th.split.I) {
    const Poly& c = dL[static_cast<std::size_t>(i)];
    // (X - h)^i = sum_k C(i,k) X^k (-h)^(i-k)
    for (int k = 0; k <= i; ++k) {
      FieldElem binom = FieldElem::from_int(field, checked::binomial(i, k));
      lp[static_cast<std::size_t>(k)] += (c * (-h_theta).pow(static_cast<unsigned>(i - k))).scaled(binom);
    }
  }
  cert.Lp = XPoly(field, lp);
  cert.output = compose_x(cert.Lp, s.key(th.base));

  Poly direct = L_h_theta;
  for (int i : th.split.I) {
    direct += dL[static_cast<std::size_t>(i)] * s.key(theta).pow(static_cast<unsigned>(i));
  }
  cert.compose_agrees = direct == cert.output;
  cert.monic = cert.output.is_monic();
  cert.degree_preserved = q_expand(cert.output, s.key(th.base)).degree() == d;
  cert.j_degenerate = std::all_of(th.split.J.begin(), th.split.J.end(),
                                  [&](int j) { return dL[static_cast<std::size_t>(j)].is_zero(); });
  cert.equals_F = cert.output == s.limit_key();

  const Value beta_b = th.beta[static_cast<std::size_t>(th.winner)];
  cert.dominance = true;
  cert.explicit_value = true;
  for (int rho = theta + 1; rho <= s.horizon(); ++rho) {
    const Poly h = h_at(s, th.base, rho);
    FpRow row;
    row.rho = rho;
    Poly Lh = compose_x(L, h);
    Poly Lph = compose_x(cert.Lp, h);
    row.nu_L = s.nu(Lh);
    row.nu_Lp = s.nu(Lph);
    row.nu_diff = s.nu(Lh - Lph);
    row.b = th.winner;
    row.beta_b = beta_b;
    row.predicted = beta_b + vg_scale(s.gamma(rho), th.winner);
    row.dominance = row.nu_diff > row.nu_L;
    row.explicit_value = row.nu_L == row.predicted && row.nu_Lp == row.predicted;
    cert.dominance = cert.dominance && row.dominance;
    cert.explicit_value = cert.explicit_value && row.explicit_value;
    cert.rows.push_back(row);
  }

  std::vector<std::string> failed;
  if (!cert.monic) failed.push_back("F_p is not monic");
  if (!cert.degree_preserved) failed.push_back("deg_X F_p != d");
  if (!cert.compose_agrees) failed.push_back("L_p(Q) differs from the direct sum");
  for (const auto& row : cert.rows) {
    if (!row.dominance) failed.push_back("dominance fails at rho = " + std::to_string(row.rho));
    if (!row.explicit_value) failed.push_back("nu(L(h_rho)) != beta_b + b gamma_rho at rho = " + std::to_string(row.rho));
  }
  if (!failed.empty()) {
    std::string msg = failed.front();
    for (std::size_t k = 1; k < failed.size(); ++k) msg += "; " + failed[k];
    throw Error(ErrorKind::CertificateFailed, msg);
  }
  return cert;
}

FpBarCertificate construct_fp_bar(const LimitScenario& s, int theta) {
  FpCertificate fp = construct_fp(s, theta);
  const ThresholdReport& th = fp.threshold;
  const FieldDescriptor& field = s.field();
  const XPoly& L = th.L;
  const int d = L.degree();
  const Poly& q_theta = s.key(theta);
  const Poly h_theta = h_at(s, th.base, theta);
  const Value& g_theta = s.gamma(theta);

  FpBarCertificate cert;
  cert.theta = theta;
  cert.split = th.split;
  cert.a.assign(static_cast<std::size_t>(d) + 1, Poly(field));
  std::vector<bool> in_support(static_cast<std::size_t>(d) + 1, false);
  in_support[0] = true;
  for (int i : th.split.I) in_support[static_cast<std::size_t>(i)] = true;

  cert.output = Poly(field);
  for (int i = 0; i <= d; ++i) {
    Poly dLh = compose_x(hasse_derivative(L, i), h_theta);
    Poly a = a_rho0(dLh, q_theta);
    BoundRow row;
    row.i = i;
    Poly diff = dLh - a;
    row.vacuous = diff.is_zero();
    row.lhs = row.vacuous ? Value::infinity() : truncation_at(s, diff, theta).value + vg_scale(g_theta, i);
    row.ok = row.lhs > s.Bbar();
    cert.bound_rows.push_back(row);
    if (in_support[static_cast<std::size_t>(i)]) {
      cert.a[static_cast<std::size_t>(i)] = a;
      cert.output += a * q_theta.pow(static_cast<unsigned>(i));
    }
  }
  cert.degrees_ok = std::all_of(cert.a.begin(), cert.a.end(), [&](const Poly& a) { return a.degree() < s.n(); });
  cert.leading_one = !cert.a.empty() && cert.a.back() == Poly::constant(FieldElem::one(field));
  QExpansion ex = q_expand(cert.output, q_theta);
  cert.support_ok = true;
  for (int i = 0; i <= ex.degree(); ++i) {
    if (!ex.coeff(i).is_zero() && (i > d || !in_support[static_cast<std::size_t>(i)])) cert.support_ok = false;
  }
  cert.equals_F = cert.output == s.limit_key();

  cert.tail_ok = true;
  for (int rho = theta + 1; rho <= s.horizon(); ++rho) {
    FpBarTailRow row;
    row.rho = rho;
    Poly diff = fp.output - cert.output;
    row.nu_diff = diff.is_zero() ? Value::infinity() : truncation_at(s, diff, rho).value;
    row.nu_F = truncation_at(s, s.limit_key(), rho).value;
    row.ok = row.nu_diff > s.Bbar() && s.Bbar() > row.nu_F;
    cert.tail_ok = cert.tail_ok && row.ok;
    cert.rows.push_back(row);
  }

  std::vector<std::string> failed;
  if (!cert.degrees_ok) failed.push_back("some a_i has degree >= n");
  if (!cert.leading_one) failed.push_back("a_d != 1");
  if (!cert.support_ok) failed.push_back("support outside I and 0");
  for (const auto& row : cert.bound_rows) {
    if (!row.ok) failed.push_back("coefficient bound fails at i = " + std::to_string(row.i));
  }
  for (const auto& row : cert.rows) {
    if (!row.ok) failed.push_back("tail bound fails at rho = " + std::to_string(row.rho));
  }
  if (!failed.empty()) {
    std::string msg = failed.front();
    for (std::size_t k = 1; k < failed.size(); ++k) msg += "; " + failed[k];
    throw Error(ErrorKind::CertificateFailed, msg);
  }
  return cert;
}

// ---------------------------------------------------------------------------

GapRecord gap_inequality(const GapInput& in) {
  if (!admissible_pair(in.p, in.i, in.j)) {
    throw Error(ErrorKind::Precondition, "(" + std::to_string(in.i) + ", " + std::to_string(in.j) +
                                             ") is not of the form (p^t, p^t r) with r > 1 and p not dividing r");
  }
  if (in.beta_j.is_infinite()) throw Error(ErrorKind::VacuouslyTrue, "d_jL vanishes, beta_j = inf");
  if (in.beta_i.is_infinite()) throw Error(ErrorKind::Precondition, "beta_i must be finite");
  if (!in.gamma.is_explicit()) throw Error(ErrorKind::Precondition, "gap_inequality needs an explicit gamma list");
  GapRecord rec;
  rec.i = in.i;
  rec.j = in.j;
  rec.threshold = in.gamma.first_index;
  const auto& g = in.gamma.explicit_values;
  for (std::size_t k = 0; k < g.size(); ++k) {
    Value lhs = in.beta_i + vg_scale(Value(g[k]), in.i);
    Value rhs = in.beta_j + vg_scale(Value(g[k]), in.j);
    if (!(lhs < rhs)) {
      std::int64_t idx = in.gamma.first_index + static_cast<std::int64_t>(k);
      rec.violations.push_back(idx);
      rec.threshold = std::max(rec.threshold, idx);
    }
  }
  rec.holds = g.empty() || rec.violations.empty() ||
              rec.violations.back() < in.gamma.first_index + static_cast<std::int64_t>(g.size()) - 1;
  rec.lhs_C = in.beta_i + vg_scale(in.C, in.i);
  rec.rhs_C = in.beta_j + vg_scale(in.C, in.j);
  rec.at_C = rec.lhs_C < rec.rhs_C;
  return rec;
}

std::vector<GapRecord> gap_scenario(const LimitScenario& s) { return gap_from(s, l_data(s)); }

}  // namespace keypoly

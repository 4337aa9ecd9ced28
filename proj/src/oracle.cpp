#include "keypoly/oracle.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <sstream>

namespace keypoly {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::vacuous: return "vacuous";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::fail: return "fail";
  }
  return "?";
}

CheckCounts CheckReport::counts() const {
  CheckCounts c;
  for (const auto& r : cases) {
    switch (r.verdict) {
      case Verdict::pass: ++c.pass; break;
      case Verdict::vacuous: ++c.vacuous; break;
      case Verdict::inconclusive: ++c.inconclusive; break;
      case Verdict::fail: ++c.fail; break;
    }
  }
  return c;
}

std::string CheckReport::lines() const {
  std::ostringstream out;
  for (const auto& r : cases) {
    out << id << " " << r.key << " " << r.lhs.str() << " " << r.rhs.str() << " " << to_string(r.verdict) << "\n";
  }
  return out.str();
}

std::string CheckReport::summary() const {
  CheckCounts c = counts();
  std::ostringstream out;
  out << id << " pass=" << c.pass << " vacuous=" << c.vacuous << " inconclusive=" << c.inconclusive
      << " fail=" << c.fail << " total=" << c.total();
  return out.str();
}

const std::vector<std::string>& check_catalog() {
  static const std::vector<std::string> ids = {"L21", "L22", "L23", "P24", "C25", "K31",
                                               "P32", "L41", "L42", "VAX", "TRC"};
  return ids;
}

bool is_check_id(const std::string& id) {
  const auto& ids = check_catalog();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

std::string fkey(std::size_t i) { return "f" + std::to_string(i); }
std::string qkey(int k) { return "Q" + std::to_string(k); }

/// Shared per-scenario data; every value is computed on first use.
class Context {
 public:
  Context(const LimitScenario& s, const std::vector<Poly>& corpus)
      : s(s), corpus(corpus), H(s.horizon()), base(base_index(s)) {
    L = q_expand(s.limit_key(), s.key(base)).as_xpoly();
    d = L.degree();
  }

  const LimitScenario& s;
  const std::vector<Poly>& corpus;
  const int H;
  const int base;
  XPoly L;
  int d = 0;

  Value nu(const Poly& f) const { return f.is_zero() ? Value::infinity() : s.nu(f); }
  Value nu_at(const Poly& f, int k) const {
    return f.is_zero() ? Value::infinity() : truncation_at(s, f, k).value;
  }
  Poly h(int rho) const { return h_at(s, base, rho); }
  /// l with f = l(Q_base).
  XPoly l_of(const Poly& f) const { return q_expand(f, s.key(base)).as_xpoly(); }
  bool within_d(const Poly& f) const { return q_expand(f, s.key(base)).degree() <= d; }

  std::vector<CaseRecord> out;
  std::vector<std::string> uncertified;

  void record(std::string key, Value lhs, Value rhs, Verdict v) {
    out.push_back({std::move(key), std::move(lhs), std::move(rhs), v});
  }

  /// Runs one case; a precision failure is remembered instead of recorded.
  void guarded(const std::string& key, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientPrecision) throw;
      uncertified.push_back(key);
    }
  }
};

Verdict holds(bool ok, bool vacuous) {
  if (!ok) return Verdict::fail;
  return vacuous ? Verdict::vacuous : Verdict::pass;
}

std::optional<Rational> eps_or_none(const LimitScenario& s, const Poly& f) {
  if (f.degree() < 1) return std::nullopt;
  return epsilon(s.valuation(), f).epsilon;
}

// nu_Q(qQ) - (eps(Q) - gamma) >= nu(f) = nu(r) for f = qQ + r with
// gamma = max(eps f, eps r) < eps Q.
void check_l21(Context& c) {
  for (int k = 1; k <= c.H; ++k) {
    const Poly& Q = c.s.key(k);
    const Rational eq = epsilon(c.s.valuation(), Q).epsilon;
    for (std::size_t i = 0; i < c.corpus.size(); ++i) {
      const Poly& f = c.corpus[i];
      std::string key = qkey(k) + ":" + fkey(i);
      c.guarded(key, [&] {
        auto ef = eps_or_none(c.s, f);
        if (!ef) return;
        DivResult qr = euclid_div(f, Q);
        auto er = eps_or_none(c.s, qr.remainder);
        Rational g = er ? std::max(*ef, *er) : *ef;
        if (!(g < eq)) return;
        Poly qQ = qr.quotient * Q;
        Value nu_f = c.nu(f);
        if (qQ.is_zero()) {
          c.record(key, Value::infinity(), nu_f, Verdict::vacuous);
          return;
        }
        Value lhs = c.nu_at(qQ, k) - Value(eq - g);
        c.record(key, lhs, nu_f, holds(lhs >= nu_f && nu_f == c.nu(qr.remainder), false));
      });
    }
  }
}

// nu_{Q_j}(f) = min_i nu_{Q_j}(f_i Q_k^i) over the Q_k-expansion, j < k.
void check_l22(Context& c) {
  for (int j = 1; j <= c.H; ++j) {
    for (int k = j + 1; k <= c.H; ++k) {
      for (std::size_t i = 0; i < c.corpus.size(); ++i) {
        const Poly& f = c.corpus[i];
        std::string key = qkey(j) + qkey(k) + ":" + fkey(i);
        c.guarded(key, [&] {
          QExpansion ex = q_expand(f, c.s.key(k));
          Value rhs = Value::infinity();
          for (int m = 0; m <= ex.degree(); ++m) {
            Poly term = ex.coeffs[static_cast<std::size_t>(m)] * c.s.key(k).pow(static_cast<unsigned>(m));
            rhs = min(rhs, c.nu_at(term, j));
          }
          Value lhs = c.nu_at(f, j);
          c.record(key, lhs, rhs, holds(lhs == rhs, false));
        });
      }
    }
  }
}

// nu(a_l - b_l) > nu(a_l) for l = delta_{Q_j}(f), Q_j at or above the base.
void check_l23(Context& c) {
  for (int j = c.base; j <= c.H; ++j) {
    for (int k = j + 1; k <= c.H; ++k) {
      for (std::size_t i = 0; i < c.corpus.size(); ++i) {
        const Poly& f = c.corpus[i];
        if (!c.within_d(f)) continue;
        std::string key = qkey(j) + qkey(k) + ":" + fkey(i);
        c.guarded(key, [&] {
          QExpansion a = q_expand(f, c.s.key(j));
          QExpansion b = q_expand(f, c.s.key(k));
          int l = truncation_at(c.s, f, j).delta;
          Poly diff = a.coeff(l) - b.coeff(l);
          Value lhs = c.nu(diff);
          Value rhs = c.nu(a.coeff(l));
          c.record(key, lhs, rhs, holds(lhs > rhs, lhs.is_infinite()));
        });
      }
    }
  }
}

// nu_rho(l(h_rho)) >= nu_rho(f), with equality iff
// nu(a_rho0(f)) = nu_rho(f) = nu(l(h_rho)).
void check_p24(Context& c) {
  for (std::size_t i = 0; i < c.corpus.size(); ++i) {
    const Poly& f = c.corpus[i];
    if (!c.within_d(f)) continue;
    XPoly l = c.l_of(f);
    for (int rho = c.base + 1; rho <= c.H; ++rho) {
      std::string key = fkey(i) + ":rho" + std::to_string(rho);
      c.guarded(key, [&] {
        Poly lh = compose_x(l, c.h(rho));
        Value lhs = c.nu_at(lh, rho);
        Value rhs = c.nu_at(f, rho);
        bool eq_side = c.nu(a_rho0(f, c.s.key(rho))) == rhs && rhs == c.nu(lh);
        bool ok = lhs >= rhs && ((lhs == rhs) == eq_side);
        c.record(key, lhs, rhs, holds(ok, lhs.is_infinite()));
      });
    }
  }
}

/// Least rho >= base with pred(sigma) for every sigma in (rho, H]; nullopt
/// when pred fails at H itself.
std::optional<int> tail_start(const Context& c, const std::function<bool(int)>& pred) {
  if (!pred(c.H)) return std::nullopt;
  int rho = c.H - 1;
  while (rho > c.base && pred(rho)) --rho;
  return rho;
}

// deg f < deg F: nu(l(h_s)) = nu(f) = nu_s(f) = nu(a_s0(f)) on a tail.
void check_c25(Context& c) {
  for (std::size_t i = 0; i < c.corpus.size(); ++i) {
    const Poly& f = c.corpus[i];
    if (f.degree() >= c.s.limit_key().degree()) continue;
    c.guarded(fkey(i), [&] {
      XPoly l = c.l_of(f);
      Value nu_f = c.nu(f);
      auto pred = [&](int sg) {
        return c.nu(compose_x(l, c.h(sg))) == nu_f && c.nu_at(f, sg) == nu_f &&
               c.nu(a_rho0(f, c.s.key(sg))) == nu_f;
      };
      auto rho = tail_start(c, pred);
      Value lhs = c.nu(compose_x(l, c.h(c.H)));
      if (!rho) {
        c.record(fkey(i) + ":rho=none", lhs, nu_f, Verdict::inconclusive);
      } else {
        c.record(fkey(i) + ":rho=" + std::to_string(*rho), lhs, nu_f, Verdict::pass);
      }
    });
  }
}

// Eventual strict minimizer of beta_j + j gamma, beta_j = nu(d_j l(h_H)).
void check_k31(Context& c) {
  const GammaSequence tail = gamma_tail(c.s, c.base + 1, c.H);
  const Value g_H = c.s.gamma(c.H);
  for (std::size_t i = 0; i < c.corpus.size(); ++i) {
    const Poly& f = c.corpus[i];
    if (!c.within_d(f)) continue;
    c.guarded(fkey(i), [&] {
      XPoly l = c.l_of(f);
      MinimizerInput in;
      in.gamma = tail;
      for (int j = 1; j <= l.degree(); ++j) {
        Value b = c.nu(compose_x(hasse_derivative(l, j), c.h(c.H)));
        if (b.is_finite()) in.terms.push_back({b.rational(), j});
      }
      if (in.terms.empty()) {
        c.record(fkey(i) + ":no-terms", Value::infinity(), Value::infinity(), Verdict::vacuous);
        return;
      }
      MinimizerResult mr;
      try {
        mr = kaplansky_minimizer(in);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoEventualMinimizer) throw;
        c.record(fkey(i) + ":b=none", Value::infinity(), Value::infinity(), Verdict::inconclusive);
        return;
      }
      const AffineTerm& w = in.terms[mr.position];
      Value lhs = Value(w.beta) + vg_scale(g_H, w.slope);
      Value rhs = Value::infinity();
      for (std::size_t t = 0; t < in.terms.size(); ++t) {
        if (t != mr.position) rhs = min(rhs, Value(in.terms[t].beta) + vg_scale(g_H, in.terms[t].slope));
      }
      // Brute-force confirmation on every listed sigma past the threshold.
      bool ok = true;
      for (int sg = static_cast<int>(mr.threshold) + 1; sg <= c.H; ++sg) {
        Value win = Value(w.beta) + vg_scale(c.s.gamma(sg), w.slope);
        for (std::size_t t = 0; t < in.terms.size(); ++t) {
          if (t == mr.position) continue;
          if (!(win < Value(in.terms[t].beta) + vg_scale(c.s.gamma(sg), in.terms[t].slope))) ok = false;
        }
      }
      std::string key = fkey(i) + ":b=" + std::to_string(w.slope) + ":rho=" + std::to_string(mr.threshold);
      c.record(key, lhs, rhs, holds(ok && lhs < rhs, in.terms.size() == 1));
    });
  }
}

// nu_s(f) = nu(l(h_s)) on a tail.
void check_p32(Context& c) {
  for (std::size_t i = 0; i < c.corpus.size(); ++i) {
    const Poly& f = c.corpus[i];
    if (!c.within_d(f)) continue;
    c.guarded(fkey(i), [&] {
      XPoly l = c.l_of(f);
      auto pred = [&](int sg) { return c.nu_at(f, sg) == c.nu(compose_x(l, c.h(sg))); };
      auto rho = tail_start(c, pred);
      Value lhs = c.nu_at(f, c.H);
      Value rhs = c.nu(compose_x(l, c.h(c.H)));
      if (!rho) {
        c.record(fkey(i) + ":rho=none", lhs, rhs, Verdict::inconclusive);
      } else {
        c.record(fkey(i) + ":rho=" + std::to_string(*rho), lhs, rhs, Verdict::pass);
      }
    });
  }
}

void check_l41(Context& c) {
  std::vector<GapRecord> recs;
  try {
    recs = gap_scenario(c.s);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::VacuouslyTrue) throw;
    c.record("pairs=none:d=" + std::to_string(c.d), Value::infinity(), Value::infinity(), Verdict::vacuous);
    return;
  }
  const ThresholdReport th = theorem_threshold(c.s);
  const Value g_H = c.s.gamma(c.H);
  for (const auto& r : recs) {
    std::string key = "i" + std::to_string(r.i) + "j" + std::to_string(r.j);
    const Value& bi = th.beta[static_cast<std::size_t>(r.i)];
    const Value& bj = th.beta[static_cast<std::size_t>(r.j)];
    if (r.vacuous) {
      c.record(key + ":tail", bi + vg_scale(g_H, r.i), Value::infinity(), Verdict::vacuous);
      c.record(key + ":C", bi + vg_scale(c.s.B(), r.i), Value::infinity(), Verdict::vacuous);
      continue;
    }
    c.record(key + ":tail:rho=" + std::to_string(r.threshold), bi + vg_scale(g_H, r.i), bj + vg_scale(g_H, r.j),
             holds(r.holds, false));
    c.record(key + ":C", r.lhs_C, r.rhs_C, holds(r.at_C, false));
  }
}

// nu_theta(d_iL(h_theta) - a_i0) + i gamma_theta > Bbar.
void check_l42(Context& c) {
  for (int theta = c.base + 1; theta <= c.H; ++theta) {
    const Poly h = c.h(theta);
    for (int i = 0; i <= c.d; ++i) {
      std::string key = "theta" + std::to_string(theta) + ":i" + std::to_string(i);
      c.guarded(key, [&] {
        Poly dLh = compose_x(hasse_derivative(c.L, i), h);
        Poly diff = dLh - a_rho0(dLh, c.s.key(theta));
        Value lhs = diff.is_zero() ? Value::infinity() : c.nu_at(diff, theta) + vg_scale(c.s.gamma(theta), i);
        c.record(key, lhs, c.s.Bbar(), holds(lhs > c.s.Bbar(), lhs.is_infinite()));
      });
    }
  }
}

// nu and every nu_{Q_k}: multiplicative and ultrametric on corpus pairs.
// One task per valuation; results are joined in valuation order.
void check_vax(Context& c) {
  const std::size_t N = c.corpus.size();
  struct Part {
    std::vector<CaseRecord> out;
    std::vector<std::string> uncertified;
  };
  auto run = [&](int k) {
    Part part;
    const std::string name = k == 0 ? "nu" : qkey(k);
    auto val = [&](const Poly& f) { return k == 0 ? c.nu(f) : c.nu_at(f, k); };
    auto guarded = [&](const std::string& key, const std::function<void()>& fn) {
      try {
        fn();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientPrecision) throw;
        part.uncertified.push_back(key);
      }
    };
    std::vector<std::optional<Value>> single(N);
    for (std::size_t i = 0; i < N; ++i) {
      guarded(name + ":" + fkey(i), [&] { single[i] = val(c.corpus[i]); });
    }
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = i; j < N; ++j) {
        if (!single[i] || !single[j]) continue;
        const Poly& f = c.corpus[i];
        const Poly& g = c.corpus[j];
        std::string key = name + ":" + fkey(i) + "," + fkey(j);
        guarded(key + ":mul", [&] {
          Value lhs = val(f * g);
          Value rhs = *single[i] + *single[j];
          part.out.push_back({key + ":mul", lhs, rhs, holds(lhs == rhs, false)});
        });
        guarded(key + ":add", [&] {
          Value lhs = val(f + g);
          Value rhs = min(*single[i], *single[j]);
          part.out.push_back({key + ":add", lhs, rhs, holds(lhs >= rhs, lhs.is_infinite())});
        });
      }
    }
    return part;
  };
  std::vector<std::future<Part>> tasks;
  for (int k = 0; k <= c.H; ++k) tasks.push_back(std::async(std::launch::async, run, k));
  for (auto& t : tasks) {
    Part part = t.get();
    for (auto& r : part.out) c.out.push_back(std::move(r));
    for (auto& u : part.uncertified) c.uncertified.push_back(std::move(u));
  }
}

// nu_{Q_k}(f) <= nu(f).
void check_trc(Context& c) {
  for (std::size_t i = 0; i < c.corpus.size(); ++i) {
    const Poly& f = c.corpus[i];
    for (int k = 1; k <= c.H; ++k) {
      std::string key = qkey(k) + ":" + fkey(i);
      c.guarded(key, [&] {
        Value lhs = c.nu_at(f, k);
        Value rhs = c.nu(f);
        c.record(key, lhs, rhs, holds(lhs <= rhs, false));
      });
    }
  }
}

}  // namespace

CheckReport run_check(const std::string& id, const LimitScenario& s, const std::vector<Poly>& corpus) {
  static const std::map<std::string, void (*)(Context&)> table = {
      {"L21", check_l21}, {"L22", check_l22}, {"L23", check_l23}, {"P24", check_p24},
      {"C25", check_c25}, {"K31", check_k31}, {"P32", check_p32}, {"L41", check_l41},
      {"L42", check_l42}, {"VAX", check_vax}, {"TRC", check_trc}};
  auto it = table.find(id);
  if (it == table.end()) throw Error(ErrorKind::Precondition, "unknown check id '" + id + "'");
  require_valid(s);
  Context c(s, corpus);
  it->second(c);
  if (!c.uncertified.empty()) {
    std::string msg = std::to_string(c.uncertified.size()) + " case(s) not certified:";
    for (const auto& k : c.uncertified) msg += " " + k;
    throw Error(ErrorKind::PrecisionExhausted, msg);
  }
  return CheckReport{id, std::move(c.out)};
}

}  // namespace keypoly

#include "keypoly/valuation.hpp"

namespace keypoly {

namespace {

/// Extra Laurent terms used when mapping F_p(t) coefficients into series.
constexpr std::int64_t kLaurentMargin = 32;

std::int64_t mapping_precision(const HahnSeries& point) {
  if (point.is_exact()) return kLaurentMargin;
  return point.precision().rational().ceil() + kLaurentMargin;
}

}  // namespace

PxValuation::PxValuation(FieldDescriptor field, Backend backend) : field_(field), backend_(std::move(backend)) {
  if (auto* s = std::get_if<SeriesBackend>(&backend_)) {
    if (field_.kind == FieldKind::rationals_padic) {
      throw Error(ErrorKind::FieldMismatch, "series evaluation needs coefficients of characteristic p");
    }
    if (s->point.p() != field_.p) throw Error(ErrorKind::FieldMismatch, "evaluation point over a different prime");
  }
  if (auto* c = std::get_if<ChainBackend>(&backend_)) {
    for (std::size_t i = 0; i < c->steps.size(); ++i) {
      const auto& step = c->steps[i];
      if (!(step.key.field() == field_)) throw Error(ErrorKind::FieldMismatch, "chain key over another field");
      if (!step.key.is_monic() || step.key.degree() < 1) {
        throw Error(ErrorKind::InvalidChain, "key " + std::to_string(i + 1) + " is not monic of positive degree");
      }
      if (step.gamma.is_infinite()) throw Error(ErrorKind::InvalidChain, "augmentation value must be finite");
      Value before = chain_value(step.key, i);
      if (!(step.gamma > before)) {
        throw Error(ErrorKind::InvalidChain, "improper augmentation at step " + std::to_string(i + 1) + ": " +
                                                 step.gamma.str() + " <= " + before.str());
      }
    }
  }
}

Value PxValuation::chain_value(const Poly& f, std::size_t depth) const {
  const auto& chain = std::get<ChainBackend>(backend_);
  if (f.is_zero()) return Value::infinity();
  if (depth == 0) {
    Value best = Value::infinity();
    for (int k = 0; k <= f.degree(); ++k) {
      const auto& c = f.coeffs()[static_cast<std::size_t>(k)];
      if (c.is_zero()) continue;
      best = min(best, base_valuation(c) + vg_scale(chain.base_mu, k));
    }
    return best;
  }
  const auto& step = chain.steps[depth - 1];
  Value best = Value::infinity();
  Poly rest = f;
  for (std::int64_t j = 0; !rest.is_zero(); ++j) {
    DivResult qr = euclid_div(rest, step.key);
    if (!qr.remainder.is_zero()) best = min(best, chain_value(qr.remainder, depth - 1) + vg_scale(step.gamma, j));
    rest = qr.quotient;
  }
  return best;
}

HahnSeries PxValuation::evaluate_series(const Poly& f) const {
  const auto* s = std::get_if<SeriesBackend>(&backend_);
  if (!s) throw Error(ErrorKind::Precondition, "not a series-evaluation valuation");
  if (!(f.field() == field_)) throw Error(ErrorKind::FieldMismatch, f.field().str() + " vs " + field_.str());
  const std::int64_t mp = mapping_precision(s->point);
  HahnSeries acc(field_.p);
  for (int k = f.degree(); k >= 0; --k) {
    acc = acc * s->point + f.coeffs()[static_cast<std::size_t>(k)].to_series(mp);
  }
  return acc;
}

/// Least exponent of f(s). Horner steps are first cut at a working
/// precision a little above the smallest exponent that can occur; the
/// precision bookkeeping of the series product says whether the cut result
/// still certifies the value. Only if none does is the full product formed.
Value PxValuation::series_value(const Poly& f, const HahnSeries& point) const {
  const std::int64_t mp = mapping_precision(point);
  std::vector<HahnSeries> coeffs;
  coeffs.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) coeffs.push_back(c.to_series(mp));
  auto horner = [&](const std::optional<Value>& cap) {
    HahnSeries acc(field_.p);
    for (int k = f.degree(); k >= 0; --k) {
      acc = acc * point + coeffs[static_cast<std::size_t>(k)];
      if (cap && acc.precision() > *cap) acc = acc.truncated(*cap);
    }
    return acc;
  };
  Value floor = Value::infinity();
  for (int k = 0; k <= f.degree(); ++k) {
    const auto& c = coeffs[static_cast<std::size_t>(k)];
    if (!c.is_zero()) floor = min(floor, c.lead() + vg_scale(point.lead(), k));
  }
  if (floor.is_finite()) {
    for (std::int64_t step = 2; step <= 16; step *= 2) {
      HahnSeries r = horner(floor + Value(step));
      if (!r.terms().empty() && Value(r.terms().front().exponent) < r.precision()) return r.valuation();
    }
  }
  return horner(std::nullopt).valuation();
}

Value PxValuation::operator()(const Poly& f) const {
  if (!(f.field() == field_)) throw Error(ErrorKind::FieldMismatch, f.field().str() + " vs " + field_.str());
  if (f.is_zero()) return Value::infinity();
  return std::visit(
      [&](const auto& b) -> Value {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, GaussBackend>) {
          Value best = Value::infinity();
          for (int k = 0; k <= f.degree(); ++k) {
            const auto& c = f.coeffs()[static_cast<std::size_t>(k)];
            if (!c.is_zero()) best = min(best, base_valuation(c) + vg_scale(b.mu, k));
          }
          return best;
        } else if constexpr (std::is_same_v<B, ChainBackend>) {
          return chain_value(f, b.steps.size());
        } else {
          return series_value(f, b.point);
        }
      },
      backend_);
}

std::string PxValuation::describe() const {
  return std::visit(
      [&](const auto& b) -> std::string {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, GaussBackend>) {
          return "gauss(mu=" + b.mu.str() + ") over " + field_.str();
        } else if constexpr (std::is_same_v<B, ChainBackend>) {
          return "chain(" + std::to_string(b.steps.size()) + " steps, mu=" + b.base_mu.str() + ") over " + field_.str();
        } else {
          return "series_eval(" + b.point.str() + ") over " + field_.str();
        }
      },
      backend_);
}

Value nu_eval(const PxValuation& v, const Poly& f) { return v(f); }

EpsilonReport epsilon(const PxValuation& v, const Poly& f) {
  if (f.degree() < 1) throw Error(ErrorKind::Precondition, "epsilon needs deg f >= 1");
  EpsilonReport rep;
  rep.nu_f = v(f);
  if (rep.nu_f.is_infinite()) throw Error(ErrorKind::Precondition, "epsilon of a polynomial with infinite value");
  std::optional<Rational> best;
  for (int b = 1; b <= f.degree(); ++b) {
    Poly d = hasse_derivative(f, b);
    EpsilonRow row{b, Value::infinity(), std::nullopt};
    if (!d.is_zero()) {
      row.nu_derivative = v(d);
      row.ratio = vg_divide(rep.nu_f - row.nu_derivative, b).rational();
      if (!best || *best < *row.ratio) best = row.ratio;
    }
    rep.rows.push_back(row);
  }
  // d_{deg f} f is the leading coefficient, never zero, so best is set.
  rep.epsilon = *best;
  for (const auto& row : rep.rows) {
    if (row.ratio && *row.ratio == rep.epsilon) rep.attaining.push_back(row.order);
  }
  return rep;
}

KeyProbeResult is_key_sampled(const PxValuation& v, const Poly& key, const std::vector<Poly>& corpus) {
  if (!key.is_monic()) throw Error(ErrorKind::Precondition, "key candidate must be monic");
  KeyProbeResult res;
  const Rational eq = epsilon(v, key).epsilon;
  for (const auto& f : corpus) {
    ++res.probes_checked;
    if (f.degree() < 1 || f.degree() >= key.degree()) continue;
    if (epsilon(v, f).epsilon >= eq) {
      res.counterexample_found = true;
      res.counterexample = f;
      return res;
    }
  }
  return res;
}

}  // namespace keypoly

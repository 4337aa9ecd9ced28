#include "keypoly/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "keypoly/parse.hpp"

namespace keypoly {

namespace {

std::string strip(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    int r = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "key '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    auto r = std::stoull(v, &used);
    if (used != v.size() || v[0] == '-') throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "key '" + key + "' expects an unsigned integer, got '" + v + "'");
  }
}

std::optional<RootTail> parse_root_tail(const std::string& v) {
  std::istringstream in(v);
  std::string word;
  int terms = 0;
  if (!(in >> word) || word != "root_tail") return std::nullopt;
  if (!(in >> terms) || terms < 0) throw Error(ErrorKind::Parse, "root_tail expects a term count");
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::Parse, "trailing text after root_tail");
  return RootTail{terms};
}

/// -sum_{i<=k} t^(-1/p^i), the constant of the k-th chain key.
FieldElem root_tail_partial(const FieldDescriptor& field, int k) {
  FieldElem acc = FieldElem::zero(field);
  std::int64_t den = 1;
  for (int i = 1; i <= k; ++i) {
    den = checked::mul(den, field.p);
    acc -= FieldElem::t_power(field, Rational(-1, den));
  }
  return acc;
}

}  // namespace

HahnSeries root_tail_series(std::uint32_t p, int terms, const Value& precision) {
  std::vector<HahnTerm> out;
  std::int64_t den = 1;
  for (int i = 1; i <= terms; ++i) {
    den = checked::mul(den, p);
    out.push_back({Rational(-1, den), 1});
  }
  return HahnSeries::from_terms(p, std::move(out), precision);
}

ScenarioSpec parse_scenario(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = strip(line.substr(0, colon));
    std::string value = strip(line.substr(colon + 1));
    if (!kv.emplace(key, value).second) throw Error(ErrorKind::Parse, "duplicate key '" + key + "'");
  }
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorKind::Parse, "missing key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_opt = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  ScenarioSpec spec;
  spec.name = take("name");
  spec.field = FieldDescriptor::parse(take("field"));
  const FieldDescriptor series_field = FieldDescriptor::make(FieldKind::puiseux, spec.field.p);

  std::string val = take("valuation");
  if (val == "series") {
    SeriesSpec s;
    std::string pt = take("series");
    if (auto rt = parse_root_tail(pt)) {
      s.point = *rt;
    } else {
      s.point = parse_field_elem(pt, series_field).series();
    }
    s.precision = Value::parse(take("series_precision"));
    spec.valuation = s;
  } else if (val.rfind("gauss", 0) == 0) {
    spec.valuation = GaussSpec{Value::parse(val.substr(5))};
  } else {
    throw Error(ErrorKind::Parse, "unknown valuation '" + val + "'");
  }

  spec.n = to_int("n", take("n"));
  std::string chain = take("chain");
  if (auto rt = parse_root_tail(chain)) {
    spec.chain = *rt;
  } else if (chain == "list") {
    std::vector<Poly> keys;
    for (int k = 1;; ++k) {
      auto v = take_opt("chain." + std::to_string(k));
      if (!v) break;
      keys.push_back(parse_poly(*v, spec.field));
    }
    spec.chain = std::move(keys);
  } else {
    throw Error(ErrorKind::Parse, "chain must be 'root_tail <m>' or 'list'");
  }
  spec.limit_key = parse_poly(take("F"), spec.field);
  spec.q0_index = to_int("q0_index", take("q0_index"));
  std::string qi = take("q_index");
  if (qi != "auto") spec.q_index = to_int("q_index", qi);
  spec.declared_B = Value::parse(take("declared_B"));
  spec.declared_Bbar = Value::parse(take("declared_Bbar"));
  spec.usable_horizon = to_int("usable_horizon", take("usable_horizon"));
  spec.corpus_seed = to_u64("corpus_seed", take("corpus_seed"));
  spec.corpus_size = to_int("corpus_size", take("corpus_size"));
  if (!kv.empty()) throw Error(ErrorKind::Parse, "unknown key '" + kv.begin()->first + "'");
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioSpec& spec) {
  std::ostringstream out;
  out << "name: " << spec.name << "\n";
  out << "field: " << spec.field.str() << "\n";
  if (const auto* s = std::get_if<SeriesSpec>(&spec.valuation)) {
    out << "valuation: series\n";
    if (const auto* rt = std::get_if<RootTail>(&s->point)) {
      out << "series: root_tail " << rt->terms << "\n";
    } else {
      out << "series: " << std::get<HahnSeries>(s->point).literal() << "\n";
    }
    out << "series_precision: " << s->precision.str() << "\n";
  } else {
    out << "valuation: gauss " << std::get<GaussSpec>(spec.valuation).mu.str() << "\n";
  }
  out << "n: " << spec.n << "\n";
  if (const auto* rt = std::get_if<RootTail>(&spec.chain)) {
    out << "chain: root_tail " << rt->terms << "\n";
  } else {
    out << "chain: list\n";
    const auto& keys = std::get<std::vector<Poly>>(spec.chain);
    for (std::size_t k = 0; k < keys.size(); ++k) out << "chain." << k + 1 << ": " << keys[k].str() << "\n";
  }
  out << "F: " << spec.limit_key.str() << "\n";
  out << "q0_index: " << spec.q0_index << "\n";
  out << "q_index: " << (spec.q_index ? std::to_string(*spec.q_index) : "auto") << "\n";
  out << "declared_B: " << spec.declared_B.str() << "\n";
  out << "declared_Bbar: " << spec.declared_Bbar.str() << "\n";
  out << "usable_horizon: " << spec.usable_horizon << "\n";
  out << "corpus_seed: " << spec.corpus_seed << "\n";
  out << "corpus_size: " << spec.corpus_size << "\n";
  return out.str();
}

PxValuation build_valuation(const ScenarioSpec& spec) {
  if (const auto* g = std::get_if<GaussSpec>(&spec.valuation)) return PxValuation::gauss(spec.field, g->mu);
  const auto& s = std::get<SeriesSpec>(spec.valuation);
  HahnSeries point = std::holds_alternative<RootTail>(s.point)
                         ? root_tail_series(spec.field.p, std::get<RootTail>(s.point).terms, s.precision)
                         : std::get<HahnSeries>(s.point).truncated(s.precision);
  return PxValuation::series(spec.field, point);
}

std::vector<Poly> build_chain(const ScenarioSpec& spec) {
  if (const auto* keys = std::get_if<std::vector<Poly>>(&spec.chain)) return *keys;
  const int m = std::get<RootTail>(spec.chain).terms;
  std::vector<Poly> keys;
  for (int k = 1; k <= m; ++k) keys.push_back(Poly::x(spec.field) + Poly::constant(root_tail_partial(spec.field, k)));
  return keys;
}

LimitScenario::LimitScenario(ScenarioSpec spec)
    : spec_(std::move(spec)), valuation_(build_valuation(spec_)), chain_(build_chain(spec_)) {
  for (const auto& q : chain_) {
    try {
      gammas_.emplace_back(valuation_(q));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientPrecision) throw;
      gammas_.emplace_back(std::nullopt);
    }
  }
}

const Poly& LimitScenario::key(int k) const {
  if (k < 1 || k > chain_length()) throw Error(ErrorKind::Precondition, "chain index " + std::to_string(k) + " out of range");
  return chain_[static_cast<std::size_t>(k - 1)];
}

bool LimitScenario::gamma_certified(int k) const {
  return k >= 1 && k <= chain_length() && gammas_[static_cast<std::size_t>(k - 1)].has_value();
}

const Value& LimitScenario::gamma(int k) const {
  key(k);
  const auto& g = gammas_[static_cast<std::size_t>(k - 1)];
  if (!g) throw Error(ErrorKind::InsufficientPrecision, "gamma_" + std::to_string(k) + " is not certified");
  return *g;
}

// ---------------------------------------------------------------------------

namespace {

/// Raw mt19937_64 output only: its sequence is fixed by the standard, unlike
/// the distribution adaptors.
class SeededDraws {
 public:
  explicit SeededDraws(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

FieldElem random_coefficient(const FieldDescriptor& field, SeededDraws& draw) {
  static const Rational kExponents[] = {Rational(-1),   Rational(-1, 2), Rational(-1, 4), Rational(-1, 8),
                                        Rational(0),    Rational(1, 4),  Rational(1, 2),  Rational(1)};
  const std::uint32_t p = field.p;
  auto unit = [&] { return FieldElem::from_int(field, 1 + static_cast<std::int64_t>(draw.below(p - 1))); };
  switch (field.kind) {
    case FieldKind::prime_field: return unit();
    case FieldKind::rationals_padic: {
      std::int64_t v = static_cast<std::int64_t>(draw.below(13)) - 6;
      return FieldElem::from_int(field, v == 0 ? 1 : v);
    }
    case FieldKind::ratfunc_tadic: {
      FieldElem c = unit() * FieldElem::t_power(field, Rational(static_cast<std::int64_t>(draw.below(3)) - 1));
      if (draw.below(2)) c += unit() * FieldElem::t_power(field, Rational(static_cast<std::int64_t>(draw.below(3)) - 1));
      return c.is_zero() ? FieldElem::one(field) : c;
    }
    case FieldKind::puiseux: {
      FieldElem c = unit() * FieldElem::t_power(field, kExponents[draw.below(8)]);
      if (draw.below(2)) c += unit() * FieldElem::t_power(field, kExponents[draw.below(8)]);
      return c.is_zero() ? FieldElem::one(field) : c;
    }
  }
  return FieldElem::one(field);
}

}  // namespace

std::vector<Poly> scenario_corpus(const LimitScenario& s) {
  const FieldDescriptor& field = s.field();
  std::vector<Poly> corpus;
  for (int k = 0; k < s.limit_key().degree(); ++k) corpus.push_back(Poly::monomial(FieldElem::one(field), k));
  for (int k = 1; k <= s.chain_length(); ++k) corpus.push_back(s.key(k));
  corpus.push_back(s.limit_key());
  SeededDraws draw(s.spec().corpus_seed);
  const int max_degree = std::max(1, s.limit_key().degree() + 1);
  for (int r = 0; r < s.spec().corpus_size; ++r) {
    int deg = static_cast<int>(draw.below(static_cast<std::uint64_t>(max_degree) + 1));
    bool monic = draw.below(2) == 0;
    std::vector<FieldElem> coeffs;
    for (int k = 0; k <= deg; ++k) {
      bool keep = k == deg || draw.below(3) != 0;
      coeffs.push_back(keep ? random_coefficient(field, draw) : FieldElem::zero(field));
    }
    if (monic) coeffs.back() = FieldElem::one(field);
    corpus.emplace_back(field, std::move(coeffs));
  }
  return corpus;
}

}  // namespace keypoly

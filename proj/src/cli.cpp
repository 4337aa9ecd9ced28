#include "keypoly/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <utility>

#include "keypoly/oracle.hpp"
#include "keypoly/parse.hpp"

namespace keypoly::cli {

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

struct Options {
  std::string scenario;
  std::string poly;
  std::string q;
  std::optional<int> q_index;
  std::string field;
  std::string mu = "0";
  std::optional<int> theta;
  std::string mode = "lines";
  bool detail = false;
  std::string check;
};

class Printer {
 public:
  Printer(std::ostream& out, const std::string& mode) : out_(out), pretty_(mode == "pretty") {}

  void record(const Fields& fields) {
    if (pretty_) {
      std::size_t width = 0;
      for (const auto& f : fields) width = std::max(width, f.first.size());
      for (const auto& f : fields) out_ << f.first << std::string(width - f.first.size(), ' ') << " : " << f.second << "\n";
      if (fields.size() > 1) out_ << "\n";
      return;
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << "; ";
      out_ << fields[i].first << " = " << fields[i].second;
    }
    out_ << "\n";
  }

  void raw(const std::string& text) { out_ << text; }

 private:
  std::ostream& out_;
  bool pretty_;
};

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string int_set(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string poly_list(const std::vector<Poly>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

void need(bool present, const std::string& what) {
  if (!present) throw Error(ErrorKind::Parse, "missing " + what);
}

/// Valuation source: the scenario's nu, or a Gauss valuation on --field.
struct Setting {
  std::optional<LimitScenario> scenario;
  std::optional<PxValuation> gauss;
  FieldDescriptor field;

  const PxValuation& valuation() const { return scenario ? scenario->valuation() : *gauss; }
};

LimitScenario load(const Options& o) {
  need(!o.scenario.empty(), "--scenario");
  return LimitScenario(load_scenario_file(o.scenario));
}

LimitScenario load_valid(const Options& o) {
  LimitScenario s = load(o);
  require_valid(s);
  return s;
}

Setting setting(const Options& o) {
  Setting st;
  if (!o.scenario.empty()) {
    if (!o.field.empty()) throw Error(ErrorKind::Parse, "--field and --scenario are mutually exclusive");
    st.scenario.emplace(load_valid(o));
    st.field = st.scenario->field();
  } else {
    need(!o.field.empty(), "--field or --scenario");
    st.field = FieldDescriptor::parse(o.field);
    st.gauss.emplace(PxValuation::gauss(st.field, Value::parse(o.mu)));
  }
  return st;
}

Poly the_poly(const Options& o, const FieldDescriptor& field) {
  need(!o.poly.empty(), "--poly");
  return parse_poly(o.poly, field);
}

/// The key for expand/truncate: --q literal or chain index --q-index.
Poly the_key(const Options& o, const Setting& st) {
  if (!o.q.empty()) {
    if (o.q_index) throw Error(ErrorKind::Parse, "--q and --q-index are mutually exclusive");
    return parse_poly(o.q, st.field);
  }
  need(o.q_index.has_value(), "--q or --q-index");
  if (!st.scenario) throw Error(ErrorKind::Parse, "--q-index needs --scenario");
  return st.scenario->key(*o.q_index);
}

int cmd_eval(const Options& o, Printer& pr) {
  Setting st = setting(o);
  pr.record({{"nu", st.valuation()(the_poly(o, st.field)).str()}});
  return ok;
}

int cmd_epsilon(const Options& o, Printer& pr) {
  Setting st = setting(o);
  EpsilonReport rep = epsilon(st.valuation(), the_poly(o, st.field));
  pr.record({{"epsilon", rep.epsilon.str()}, {"I", int_set(rep.attaining)}, {"nu", rep.nu_f.str()}});
  if (o.detail) {
    for (const auto& row : rep.rows) {
      pr.record({{"b", std::to_string(row.order)},
                 {"nu_d", row.nu_derivative.str()},
                 {"ratio", row.ratio ? row.ratio->str() : "skip"}});
    }
  }
  return ok;
}

int cmd_expand(const Options& o, Printer& pr) {
  Setting st;
  if (!o.scenario.empty()) {
    st = setting(o);
  } else {
    need(!o.field.empty(), "--field or --scenario");
    st.field = FieldDescriptor::parse(o.field);
  }
  QExpansion ex = q_expand(the_poly(o, st.field), the_key(o, st));
  pr.record({{"a", poly_list(ex.coeffs)}});
  return ok;
}

int cmd_truncate(const Options& o, Printer& pr) {
  Setting st = setting(o);
  Poly f = the_poly(o, st.field);
  Poly key = the_key(o, st);
  TruncationReport rep = truncate(st.valuation(), f, key);
  pr.record({{"nu_Q", rep.value.str()}, {"S_Q", int_set(rep.attaining)}, {"delta_Q", std::to_string(rep.delta)}});
  if (o.detail) {
    for (std::size_t i = 0; i < rep.terms.size(); ++i) {
      pr.record({{"i", std::to_string(i)}, {"nu_term", rep.terms[i].str()}});
    }
  }
  return ok;
}

int cmd_stable(const Options& o, Printer& pr) {
  LimitScenario s = load_valid(o);
  StableResult r = is_stable_at_horizon(s, the_poly(o, s.field()));
  if (r.stable) {
    pr.record({{"stable", "yes"},
               {"k", std::to_string(r.index)},
               {"nu", r.nu_f.str()},
               {"S_Q", int_set(r.certificate->attaining)}});
  } else {
    pr.record({{"stable", "no"}, {"horizon", std::to_string(s.horizon())}, {"nu", r.nu_f.str()}});
  }
  return ok;
}

int cmd_fixed(const Options& o, Printer& pr) {
  LimitScenario s = load_valid(o);
  Poly f = the_poly(o, s.field());
  FixedResult r = o.q_index ? is_fixed(s, f, *o.q_index) : is_fixed(s, f);
  pr.record({{"fixed", yes(r.fixed)},
             {"rho", r.fixed ? std::to_string(r.witness) : "none"},
             {"rho_minus", r.witness_minus ? std::to_string(*r.witness_minus) : "none"},
             {"base", std::to_string(r.base)},
             {"nu", r.nu_f.str()}});
  if (o.detail) {
    pr.record({{"l", r.l.str()}});
    for (const auto& row : r.rows) {
      pr.record({{"rho", std::to_string(row.rho)},
                 {"nu_l_h", row.nu_l_h.str()},
                 {"nu_l_minus_h", row.nu_l_minus_h.str()}});
    }
  }
  return ok;
}

int cmd_choose_q(const Options& o, Printer& pr) {
  LimitScenario s = load_valid(o);
  BaseChoice c = explain_base_q(s);
  pr.record({{"q_index", std::to_string(c.index)}, {"eps_Q0", c.eps_q0.str()}});
  if (o.detail) {
    for (const auto& row : c.rows) {
      pr.record({{"k", std::to_string(row.index)},
                 {"gain", row.gain.str()},
                 {"d(B-gamma)", row.bound_B.str()},
                 {"Bbar-nu_Q(F)", row.bound_Bbar.str()},
                 {"ok", yes(row.ok)}});
    }
  }
  return ok;
}

int default_theta(const Options& o, const LimitScenario& s) {
  return o.theta ? *o.theta : theorem_threshold(s).sigma + 1;
}

int cmd_construct_fp(const Options& o, Printer& pr) {
  LimitScenario s = load_valid(o);
  FpCertificate c = construct_fp(s, default_theta(o, s));
  pr.record({{"F_p", c.output.str()},
             {"theta", std::to_string(c.theta)},
             {"sigma", std::to_string(c.threshold.sigma)},
             {"monic", yes(c.monic)},
             {"deg_X", std::to_string(q_expand(c.output, s.key(c.threshold.base)).degree())},
             {"I", int_set(c.threshold.split.I)},
             {"J", int_set(c.threshold.split.J)},
             {"j_degenerate", yes(c.j_degenerate)},
             {"equals_F", yes(c.equals_F)}});
  if (o.detail) {
    pr.record({{"L_p", c.Lp.str()}});
    for (const auto& row : c.rows) {
      pr.record({{"rho", std::to_string(row.rho)},
                 {"nu_L", row.nu_L.str()},
                 {"nu_Lp", row.nu_Lp.str()},
                 {"nu_diff", row.nu_diff.str()},
                 {"b", std::to_string(row.b)},
                 {"beta_b", row.beta_b.str()},
                 {"predicted", row.predicted.str()}});
    }
  }
  return ok;
}

int cmd_construct_fp_bar(const Options& o, Printer& pr) {
  LimitScenario s = load_valid(o);
  FpBarCertificate c = construct_fp_bar(s, default_theta(o, s));
  std::vector<int> support{0};
  for (int i : c.split.I) support.push_back(i);
  pr.record({{"Fbar_p", c.output.str()},
             {"theta", std::to_string(c.theta)},
             {"a", poly_list(c.a)},
             {"a_d", c.a.empty() ? "0" : c.a.back().str()},
             {"support", int_set(support)},
             {"equals_F", yes(c.equals_F)}});
  if (o.detail) {
    for (const auto& row : c.bound_rows) {
      pr.record({{"i", std::to_string(row.i)}, {"bound_lhs", row.lhs.str()}, {"Bbar", s.Bbar().str()},
                 {"vacuous", yes(row.vacuous)}});
    }
    for (const auto& row : c.rows) {
      pr.record({{"rho", std::to_string(row.rho)}, {"nu_diff", row.nu_diff.str()}, {"nu_F", row.nu_F.str()}});
    }
  }
  return ok;
}

int cmd_verify(const Options& o, Printer& pr) {
  need(!o.check.empty(), "check id (or `all`)");
  if (o.check != "all" && !is_check_id(o.check)) throw Error(ErrorKind::Parse, "unknown check id '" + o.check + "'");
  LimitScenario s = load_valid(o);
  std::vector<Poly> corpus = scenario_corpus(s);
  std::vector<std::string> ids = o.check == "all" ? check_catalog() : std::vector<std::string>{o.check};
  bool failed = false;
  for (const auto& id : ids) {
    CheckReport rep = run_check(id, s, corpus);
    if (o.detail) pr.raw(rep.lines());
    pr.raw(rep.summary() + "\n");
    failed = failed || !rep.ok();
  }
  return failed ? check_failed : ok;
}

int cmd_validate(const Options& o, Printer& pr) {
  LimitScenario s = load(o);
  ValidationReport rep = validate_scenario(s);
  if (rep.ok()) {
    pr.record({{"valid", "yes"}, {"name", s.spec().name}, {"horizon", std::to_string(s.horizon())}});
    return ok;
  }
  for (const auto& issue : rep.issues) {
    pr.record({{"valid", "no"}, {"index", std::to_string(issue.index)}, {"reason", issue.reason}});
  }
  return check_failed;
}

/// Errors caused by what the user typed, as opposed to failed mathematics.
bool is_usage_error(ErrorKind k) {
  return k == ErrorKind::Parse || k == ErrorKind::Precondition || k == ErrorKind::FieldMismatch ||
         k == ErrorKind::InvalidScenario;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limit key polynomial toolkit", "keypoly"};
  app.require_subcommand(1);
  Options o;

  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "output mode")->check(CLI::IsMember({"lines", "pretty"}));
    sub->add_flag("--detail", o.detail, "print per-row data");
  };
  auto add_valuation = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "scenario file");
    sub->add_option("--field", o.field, "coefficient field: Q, Q:p, Fp, Fp(t), Fp<t>");
    sub->add_option("--mu", o.mu, "Gauss valuation parameter (with --field)");
  };

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Options&, Printer&);
  };
  const Entry entries[] = {
      {"eval", "value of a polynomial", cmd_eval},
      {"epsilon", "epsilon(f) and I(f)", cmd_epsilon},
      {"expand", "Q-expansion coefficients", cmd_expand},
      {"truncate", "truncation nu_Q, S_Q and delta_Q", cmd_truncate},
      {"stable", "stability at the scenario horizon", cmd_stable},
      {"fixed", "fixedness against the base key", cmd_fixed},
      {"choose-q", "least chain index satisfying the base inequalities", cmd_choose_q},
      {"construct-fp", "p-power rewrite F_p with certificate", cmd_construct_fp},
      {"construct-fp-bar", "p-power rewrite with constant-term coefficients", cmd_construct_fp_bar},
      {"verify", "run one check of the catalog, or all", cmd_verify},
      {"validate", "check the scenario assumptions", cmd_validate},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&, Printer&)>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_mode(sub);
    const std::string name = e.name;
    if (name == "eval" || name == "epsilon" || name == "expand" || name == "truncate") {
      add_valuation(sub);
    } else {
      sub->add_option("--scenario", o.scenario, "scenario file")->required();
    }
    if (name != "choose-q" && name != "verify" && name != "validate" && name.rfind("construct", 0) != 0) {
      sub->add_option("--poly", o.poly, "polynomial literal")->required();
    }
    if (name == "expand" || name == "truncate") sub->add_option("--q", o.q, "key polynomial literal");
    if (name == "expand" || name == "truncate" || name == "fixed") {
      sub->add_option("--q-index", o.q_index, "chain index of the key");
    }
    if (name.rfind("construct", 0) == 0) sub->add_option("--theta", o.theta, "chain index theta");
    if (name == "verify") sub->add_option("check", o.check, "check id or `all`")->required();
    subs.emplace_back(sub, e.fn);
  }

  std::vector<const char*> argv{"keypoly"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  Printer pr(out, o.mode);
  try {
    for (const auto& [sub, fn] : subs) {
      if (sub->parsed()) return fn(o, pr);
    }
  } catch (const Error& e) {
    err << "keypoly: error: " << e.what() << "\n";
    return is_usage_error(e.kind()) ? usage : check_failed;
  }
  return usage;
}

}  // namespace keypoly::cli

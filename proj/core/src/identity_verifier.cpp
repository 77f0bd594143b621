#include "sigmaq/identity_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sigmaq/error.hpp"
#include "sigmaq/special.hpp"
#include "sigmaq/stats.hpp"

namespace sigmaq {

namespace {

constexpr double kMinLevel = 1e-12;

std::uint64_t sub_seed(const VerifyConfig& cfg, std::uint64_t k) {
  return derive_seed(cfg.seed, k, Stream::kPaired);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string make_id(const std::string& name, const std::vector<std::string>& params,
                    const VerifyConfig& cfg) {
  std::string out = name + "[";
  for (const auto& p : params) out += p + ";";
  out += "step=" + fmt(cfg.step) + ";horizon=" + fmt(cfg.horizon) + "]";
  return out;
}

void stamp(IdentityReport& r, const VerifyConfig& cfg) {
  r.seed = cfg.seed;
  r.n = cfg.n;
  r.step = cfg.step;
  r.horizon = cfg.horizon;
}

double model_bias(const Model& model, const VerifyConfig& cfg) {
  return model.kind == Model::Kind::kBessel && model.d != 1.0 ? cfg.bessel_bias : 0.0;
}

// Exponential(1) is close to the variance-optimal density sqrt(P(L_t > l))
// for the indicator integrands at t = 1; W^+ and W^- levels are half local
// times.
LevelProposal default_proposal(const Model& model) {
  switch (model.kind) {
    case Model::Kind::kWPlus:
    case Model::Kind::kWMinus:
      return LevelProposal::exponential(2.0);
    case Model::Kind::kDrawdown:
      return LevelProposal::exponential(0.5);
    default:
      return LevelProposal::exponential(1.0);
  }
}

struct Truncation {
  double level = kMinLevel;
  EstimatorResult remainder;
  bool achievable = true;
};

// R = empirical (1 - tail) quantile of A_T. On {g <= T} A_inf = A_T, so the
// mass cut off on the Q side is exactly E_P[F_T X_T 1{A_T > R}], bounded
// here with |F| <= bound.
Truncation choose_truncation(const std::vector<double>& a, const std::vector<double>& x,
                             double bound, const VerifyConfig& cfg) {
  Truncation out;
  const double r = quantile(a, 1.0 - cfg.tail_prob);
  out.achievable = r <= cfg.max_level;
  out.level = std::max(r, kMinLevel);
  std::vector<double> rem(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) rem[i] = a[i] > out.level ? bound * x[i] : 0.0;
  out.remainder = summarize(rem);
  return out;
}

double remainder_budget(const Truncation& tr) {
  return tr.remainder.mean + 3.0 * tr.remainder.std_error;
}

// Drawdown of the signed path of a W^- sample: X = S - Y, A = S.
ClassSigmaPath drawdown_view(const WeightedSample& s) {
  const auto& y = s.path.values;
  const std::size_t n = y.size();
  ClassSigmaPath out;
  out.grid = s.path.grid;
  out.model_tag = "drawdown_of_w_minus";
  out.signed_values = y;
  out.x.resize(n);
  out.a.resize(n);
  out.zero_mark.assign(n, 0);
  double running = y.front();
  out.zero_mark[0] = 1;
  out.x[0] = 0.0;
  out.a[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double peak = std::max(s.path.interval_max[i], y[i + 1]);
    if (peak > running) {
      running = peak;
      out.zero_mark[i + 1] = 1;
    }
    out.a[i + 1] = running - y.front();
    out.x[i + 1] = running - y[i + 1];
  }
  return out;
}

SamplerOptions sampler_options(const VerifyConfig& cfg) {
  SamplerOptions opts = cfg.sampler;
  if (opts.threads == 0) opts.threads = cfg.threads;
  return opts;
}

// Q side of the master identity restricted to {A_inf <= R}.
EstimatorResult q_side(const Model& model, const CylinderFunctional& F, const StoppingRule& rule,
                       const Truncation& tr, const VerifyConfig& cfg, std::uint64_t seed,
                       double* extra_budget) {
  const TimeGrid grid = cfg.grid();
  const bool with_indicator = !cfg.drop_indicator;
  const SamplerOptions opts = sampler_options(cfg);
  if (model.kind != Model::Kind::kDrawdown) {
    const auto proposal = cfg.proposal.value_or(default_proposal(model));
    auto H = QIntegrand::of([&](const WeightedSample& s) {
      const std::size_t k = rule.evaluate_index(s.sigma);
      if (with_indicator && !(s.splice_index && *s.splice_index <= k)) return 0.0;
      return F.evaluate(s.sigma, k);
    });
    if (!with_indicator && F.constant_value()) H = QIntegrand::constant_value(*F.constant_value());
    return q_integral(model.q_tag(), H, TestFunction::indicator(tr.level), proposal, cfg.n, seed,
                      grid, opts);
  }

  // Drawdown under W^-: the path Y is M itself and g is the time of the
  // overall maximum. When tau_l > T the indicator is replaced by its
  // conditional value given F_T: Y must return to 0 before S_T, then spend
  // the remaining local time without an excursion above S_T, which
  // excursion theory prices at exp(-dL / (2 S_T)).
  const double R = tr.level;
  const double t = rule.cap();
  const double B = std::max(F.bound(), 1e-300);
  const double mgf = 2.0 * std::exp(t / (8.0 * R * R)) * normal_cdf(std::sqrt(t) / (2.0 * R));
  const double level_cap = std::max(R, R * std::log(B * R * mgf / cfg.level_tail));
  *extra_budget += cfg.level_tail;
  const auto proposal = cfg.proposal.value_or(default_proposal(model));
  const auto H = QIntegrand::of([&](const WeightedSample& s) {
    const ClassSigmaPath view = drawdown_view(s);
    const std::size_t k = rule.evaluate_index(view);
    const double S = view.a[k];
    if (S > R) return 0.0;
    const double f = F.evaluate(view, k);
    if (f == 0.0) return 0.0;
    if (!with_indicator || (s.splice_index && *s.splice_index <= k)) return f;
    if (S <= 0.0) return 0.0;
    const double y = s.path.values[k];
    const double local_time = 2.0 * s.sigma.a[k];
    const double dl = std::max(0.0, 2.0 * s.level - local_time);
    const double back = y <= 0.0 ? 1.0 : (S - y) / S;
    return f * back * std::exp(-dl / (2.0 * S));
  });
  return q_integral(MeasureTag::w_minus(), H, TestFunction::indicator(level_cap), proposal, cfg.n,
                    seed, grid, opts);
}

IdentityReport master_core(const std::string& id, const Model& model,
                           const CylinderFunctional& F, const StoppingRule& rule,
                           const VerifyConfig& cfg) {
  const TimeGrid grid = cfg.grid();
  rule.validate(grid);
  const std::size_t n = cfg.n;
  std::vector<double> fx(n), x(n), a(n);
  const std::uint64_t p_seed = sub_seed(cfg, 1);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const ClassSigmaPath path =
        build_model_path(model, derive_seed(p_seed, i, Stream::kPath), grid, cfg.sampler);
    const std::size_t k = rule.evaluate_index(path);
    x[i] = path.x[k];
    a[i] = path.a[k];
    fx[i] = F.evaluate(path, k) * x[i];
  });
  const Truncation tr = choose_truncation(a, x, F.bound(), cfg);
  double extra = 0.0;
  EstimatorResult lhs = q_side(model, F, rule, tr, cfg, sub_seed(cfg, 2), &extra);
  lhs.bias_budget = remainder_budget(tr) + extra + model_bias(model, cfg);
  IdentityReport r = make_report(id, lhs, summarize(fx), cfg.z_crit);
  stamp(r, cfg);
  r.components.emplace_back("truncation_remainder", tr.remainder);
  r.note = "R=" + fmt(tr.level);
  if (!tr.achievable && r.verdict == Verdict::kPass) r.verdict = Verdict::kInconclusive;
  return r;
}

// int_0^a 2 Phi(-u) du.
double half_normal_tail_integral(double a) {
  return 2.0 * (a * normal_cdf(-a) - normal_pdf(a) + normal_pdf(0.0));
}

// e^{x^2/2} Phi(-x) without overflow.
double mills_product(double x) {
  if (x > 25.0) return normal_pdf(0.0) / x * (1.0 - 1.0 / (x * x) + 3.0 / (x * x * x * x));
  return std::exp(0.5 * x * x) * normal_cdf(-x);
}

}  // namespace

Model Model::bessel(double d) {
  if (!(d > 0.0 && d < 2.0)) throw ConfigError("Bessel model dimension must lie in (0, 2)");
  return {Kind::kBessel, d};
}

Model Model::parse(const std::string& text) {
  if (text == "abs_bm") return abs_bm();
  if (text == "w_plus") return w_plus();
  if (text == "w_minus") return w_minus();
  if (text == "drawdown") return drawdown();
  if (text.rfind("bessel:", 0) == 0) {
    const std::string num = text.substr(7);
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw ConfigError("bad Bessel dimension in '" + text + "'");
    return bessel(d);
  }
  throw ConfigError("unknown model '" + text + "'");
}

std::string Model::describe() const {
  switch (kind) {
    case Kind::kAbsBm:
      return "abs_bm";
    case Kind::kWPlus:
      return "w_plus";
    case Kind::kWMinus:
      return "w_minus";
    case Kind::kBessel:
      return "bessel:" + fmt(d);
    case Kind::kDrawdown:
      return "drawdown";
  }
  return "abs_bm";
}

MeasureTag Model::q_tag() const {
  switch (kind) {
    case Kind::kAbsBm:
      return MeasureTag::q_abs_bm();
    case Kind::kWPlus:
      return MeasureTag::w_plus();
    case Kind::kWMinus:
    case Kind::kDrawdown:
      return MeasureTag::w_minus();
    case Kind::kBessel:
      return MeasureTag::q_bessel(d);
  }
  return MeasureTag::q_abs_bm();
}

ClassSigmaPath build_model_path(const Model& model, std::uint64_t seed, const TimeGrid& grid,
                                const SamplerOptions& opts) {
  switch (model.kind) {
    case Model::Kind::kAbsBm:
      return build_abs_bm_levy(seed, grid);
    case Model::Kind::kWPlus:
      return build_signed_bm(simulate_bm_local_time(seed, grid), SignedFamily::kPlus);
    case Model::Kind::kWMinus:
      return build_signed_bm(simulate_bm_local_time(seed, grid), SignedFamily::kMinus);
    case Model::Kind::kBessel:
      if (model.d == 1.0) return build_abs_bm_levy(seed, grid);
      return build_bessel_scale(simulate_bessel(seed, grid, model.d), 1.0 - 0.5 * model.d,
                                opts.eps_for(grid.step()));
    case Model::Kind::kDrawdown:
      return build_drawdown(simulate_bm(seed, grid));
  }
  throw ConfigError("unknown model");
}

IdentityReport verify_master(const Model& model, const CylinderFunctional& F, double t,
                             const VerifyConfig& cfg) {
  const std::string id = make_id(model.kind == Model::Kind::kDrawdown ? "drawdown_wminus" : "master",
                                 {"model=" + model.describe(), "F=" + F.name(), "t=" + fmt(t)}, cfg);
  return master_core(id, model, F, StoppingRule::deterministic(t), cfg);
}

IdentityReport verify_stopping(const Model& model, const CylinderFunctional& F,
                               const StoppingRule& T, const VerifyConfig& cfg) {
  const std::string id =
      make_id("stopping", {"model=" + model.describe(), "F=" + F.name(), "T=" + T.describe()}, cfg);
  return master_core(id, model, F, T, cfg);
}

IdentityReport verify_class_d(const CylinderFunctional& F, const StoppingRule& T,
                              const VerifyConfig& cfg) {
  const TimeGrid grid = cfg.grid();
  T.validate(grid);
  const std::size_t n = cfg.n;
  const std::size_t end = grid.steps();
  std::vector<double> lhs(n), rhs(n);
  const std::uint64_t seed = sub_seed(cfg, 1);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const ClassSigmaPath path = build_abs_bm_levy(derive_seed(seed, i, Stream::kPath), grid);
    const std::size_t k = T.evaluate_index(path);
    const double f = F.evaluate(path, k);
    lhs[i] = f * path.x[k];
    const auto g = last_zero(path, end);
    rhs[i] = g && *g <= k ? f * path.x[end] : 0.0;
  });
  IdentityReport r =
      make_report(make_id("class_d", {"F=" + F.name(), "T=" + T.describe()}, cfg), summarize(lhs),
                  summarize(rhs), cfg.z_crit);
  stamp(r, cfg);
  return r;
}

IdentityReport verify_doob(const CylinderFunctional& F, const StoppingRule& T,
                           const VerifyConfig& cfg) {
  const TimeGrid grid = cfg.grid();
  T.validate(grid);
  const std::size_t n = cfg.n;
  std::vector<double> fb(n), a(n), xp(n), xm(n);
  const std::uint64_t p_seed = sub_seed(cfg, 1);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const ClassSigmaPath path = build_signed_bm(
        simulate_bm_local_time(derive_seed(p_seed, i, Stream::kPath), grid), SignedFamily::kAbs);
    const std::size_t k = T.evaluate_index(path);
    const double b = path.signed_values[k];
    fb[i] = F.evaluate(path, k) * b;
    a[i] = 0.5 * path.a[k];
    xp[i] = std::max(b, 0.0);
    xm[i] = std::max(-b, 0.0);
  });
  const Truncation tp = choose_truncation(a, xp, F.bound(), cfg);
  const Truncation tm = choose_truncation(a, xm, F.bound(), cfg);
  double extra = 0.0;
  EstimatorResult plus = q_side(Model::w_plus(), F, T, tp, cfg, sub_seed(cfg, 3), &extra);
  EstimatorResult minus = q_side(Model::w_minus(), F, T, tm, cfg, sub_seed(cfg, 4), &extra);
  plus.bias_budget = remainder_budget(tp);
  minus.bias_budget = remainder_budget(tm);
  EstimatorResult lhs;
  lhs.mean = plus.mean - minus.mean;
  lhs.std_error = std::hypot(plus.std_error, minus.std_error);
  lhs.n = plus.n + minus.n;
  lhs.bias_budget = plus.bias_budget + minus.bias_budget;
  IdentityReport r = make_report(make_id("doob", {"F=" + F.name(), "T=" + T.describe()}, cfg), lhs,
                                 summarize(fb), cfg.z_crit);
  stamp(r, cfg);
  r.components.emplace_back("W_PLUS", plus);
  r.components.emplace_back("W_MINUS", minus);
  if ((!tp.achievable || !tm.achievable) && r.verdict == Verdict::kPass) {
    r.verdict = Verdict::kInconclusive;
  }
  return r;
}

IdentityReport verify_nf_density(const Model& model, const TestFunction& f,
                                 const CylinderFunctional& F, double t, const VerifyConfig& cfg) {
  if (model.kind == Model::Kind::kDrawdown) {
    throw UnsupportedError("N^f density check runs on the spliced models");
  }
  const TimeGrid grid = cfg.grid();
  const std::size_t k = grid.index_of(t);
  const std::size_t n = cfg.n;
  const std::uint64_t p_seed = sub_seed(cfg, 1);
  const auto rhs = evaluate_samples(n, cfg.threads, [&](std::size_t i) {
    const ClassSigmaPath path =
        build_model_path(model, derive_seed(p_seed, i, Stream::kPath), grid, cfg.sampler);
    const double fv = F.evaluate(path, k);
    return fv == 0.0 ? 0.0 : fv * mf_value(path, f, k);
  });
  auto H = QIntegrand::of([&](const WeightedSample& s) { return F.evaluate(s.sigma, k); });
  if (F.constant_value()) H = QIntegrand::constant_value(*F.constant_value());
  const auto proposal = cfg.proposal.value_or(LevelProposal::default_for(f));
  EstimatorResult lhs =
      q_integral(model.q_tag(), H, f, proposal, n, sub_seed(cfg, 2), grid, sampler_options(cfg));
  lhs.bias_budget = model_bias(model, cfg);
  IdentityReport r = make_report(
      make_id("nf_density",
              {"model=" + model.describe(), "f=" + f.describe(), "F=" + F.name(), "t=" + fmt(t)},
              cfg),
      lhs, summarize(rhs), cfg.z_crit);
  stamp(r, cfg);
  return r;
}

double class_d_ainf_closed_form(const TestFunction& f, double t) {
  if (!(t > 0.0)) throw ConfigError("class (D) horizon must be > 0");
  const double s = std::sqrt(t);
  switch (f.kind()) {
    case TestFunction::Kind::kExponential: {
      const double x = f.rate() * s;
      return 2.0 * (0.5 - mills_product(x));
    }
    case TestFunction::Kind::kIndicator:
      return s * half_normal_tail_integral(*f.support_end() / s);
    case TestFunction::Kind::kPiecewise: {
      double sum = 0.0;
      const auto& b = f.breakpoints();
      const auto& lv = f.levels();
      for (std::size_t j = 0; j < lv.size(); ++j) {
        sum += lv[j] * s *
               (half_normal_tail_integral(b[j + 1] / s) - half_normal_tail_integral(b[j] / s));
      }
      return sum;
    }
  }
  return 0.0;
}

IdentityReport verify_ainf_image(AinfModel model, const TestFunction& f, const VerifyConfig& cfg) {
  const TimeGrid grid = cfg.grid();
  if (model == AinfModel::kAbsBm) {
    const auto proposal = cfg.proposal.value_or(LevelProposal::default_for(f));
    EstimatorResult lhs = q_integral(MeasureTag::q_abs_bm(), QIntegrand::constant_value(1.0), f,
                                     proposal, cfg.n, sub_seed(cfg, 2), grid, sampler_options(cfg));
    // X_0 = 0: the image of Q under A_inf is Lebesgue measure.
    IdentityReport r =
        make_report(make_id("ainf_abs_bm", {"f=" + f.describe()}, cfg), lhs,
                    EstimatorResult::exact(f.mass(), cfg.n), cfg.z_crit);
    stamp(r, cfg);
    return r;
  }
  const std::size_t end = grid.steps();
  EstimatorResult lhs = reweight_class_d(
      [end](const ClassSigmaPath& p) { return p.x[end]; },
      [&f, end](const ClassSigmaPath& p) { return f(p.a[end]); }, cfg.n, sub_seed(cfg, 1), grid,
      cfg.threads);
  IdentityReport r = make_report(make_id("ainf_class_d", {"f=" + f.describe()}, cfg), lhs,
                                 EstimatorResult::exact(class_d_ainf_closed_form(f, cfg.horizon),
                                                        cfg.n),
                                 cfg.z_crit);
  stamp(r, cfg);
  return r;
}

std::vector<IdentityReport> verify_martingale_constancy(const Model& model, const TestFunction& f,
                                                        const std::vector<StoppingRule>& rules,
                                                        const VerifyConfig& cfg) {
  const TimeGrid grid = cfg.grid();
  for (const auto& r : rules) r.validate(grid);
  const std::size_t n = cfg.n;
  std::vector<std::vector<double>> values(rules.size(), std::vector<double>(n));
  double x0 = 0.0;
  const std::uint64_t p_seed = sub_seed(cfg, 1);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const ClassSigmaPath path =
        build_model_path(model, derive_seed(p_seed, i, Stream::kPath), grid, cfg.sampler);
    if (i == 0) x0 = path.x[0];
    for (std::size_t j = 0; j < rules.size(); ++j) {
      values[j][i] = mf_value(path, f, rules[j].evaluate_index(path));
    }
  });
  const double start = f.tail(0.0) + f(0.0) * x0;
  std::vector<IdentityReport> out;
  for (std::size_t j = 0; j < rules.size(); ++j) {
    EstimatorResult lhs = summarize(values[j]);
    lhs.bias_budget = model_bias(model, cfg);
    IdentityReport r = make_report(
        make_id("mf_constancy",
                {"model=" + model.describe(), "f=" + f.describe(), "T=" + rules[j].describe()},
                cfg),
        lhs, EstimatorResult::exact(start, n), cfg.z_crit);
    stamp(r, cfg);
    out.push_back(std::move(r));
  }
  return out;
}

IdentityReport verify_azema(double alpha, const CylinderFunctional& F, double t,
                            const VerifyConfig& cfg) {
  if (F.filtration() != CylinderFunctional::Filtration::kZeros) {
    throw ConfigError("Azema identity needs a zero-filtration functional");
  }
  const double c = azema_constant(alpha);
  const Model model = Model::bessel(2.0 * (1.0 - alpha));
  const TimeGrid grid = cfg.grid();
  const std::size_t k = grid.index_of(t);
  const std::size_t n = cfg.n;
  std::vector<double> rhs(n), fx(n), x(n), a(n);
  const std::uint64_t p_seed = sub_seed(cfg, 1);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const ClassSigmaPath path =
        build_model_path(model, derive_seed(p_seed, i, Stream::kPath), grid, cfg.sampler);
    const double f = F.evaluate(path, k);
    const auto g = last_zero(path, k);
    const double age = g ? t - grid.time(*g) : t;
    rhs[i] = c * f * std::pow(age, alpha);
    x[i] = path.x[k];
    a[i] = path.a[k];
    fx[i] = f * x[i];
  });
  const Truncation tr = choose_truncation(a, x, F.bound(), cfg);
  double extra = 0.0;
  EstimatorResult lhs =
      q_side(model, F, StoppingRule::deterministic(t), tr, cfg, sub_seed(cfg, 2), &extra);
  lhs.bias_budget = remainder_budget(tr) + model_bias(model, cfg);
  const bool unit = F.constant_value().has_value();
  IdentityReport r = make_report(
      make_id(unit ? "azema_unit" : "azema_zeros",
              {"alpha=" + fmt(alpha), "F=" + F.name(), "t=" + fmt(t)}, cfg),
      lhs, summarize(rhs), cfg.z_crit);
  stamp(r, cfg);
  r.components.emplace_back("P[F X_t]", summarize(fx));
  r.components.emplace_back("truncation_remainder", tr.remainder);
  r.note = "R=" + fmt(tr.level);
  if (!tr.achievable && r.verdict == Verdict::kPass) r.verdict = Verdict::kInconclusive;
  return r;
}

IdentityReport azema_slope(const VerifyConfig& cfg) {
  const TimeGrid grid = cfg.grid();
  const std::size_t end = grid.steps();
  const double t = grid.horizon();
  const std::size_t n = cfg.n;
  std::vector<double> root_age(n), abs_b(n);
  const std::uint64_t seed = sub_seed(cfg, 1);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const ClassSigmaPath path = build_abs_bm_levy(derive_seed(seed, i, Stream::kPath), grid);
    const auto g = last_zero(path, end);
    root_age[i] = std::sqrt(g ? t - grid.time(*g) : t);
    abs_b[i] = path.x[end];
  });
  const SlopeFit fit = slope_through_origin(root_age, abs_b);
  EstimatorResult lhs{fit.slope, fit.std_error, n, 0.0};
  IdentityReport r = make_report(make_id("azema_slope", {"t=" + fmt(t)}, cfg), lhs,
                                 EstimatorResult::exact(azema_constant(0.5), n), cfg.z_crit);
  stamp(r, cfg);
  return r;
}

const std::vector<std::string>& registered_identities() {
  static const std::vector<std::string> ids = {
      "master",       "master_cylinder", "stopping",        "class_d",
      "doob",         "nf_density",      "ainf_abs_bm",     "ainf_class_d",
      "mf_constancy", "mf_constancy_drawdown", "drawdown_wminus", "azema_unit",
      "azema_zeros",  "azema_slope"};
  return ids;
}

const std::vector<std::string>& azema_identities() {
  static const std::vector<std::string> ids = {"azema_unit", "azema_zeros", "azema_slope"};
  return ids;
}

bool is_registered_identity(const std::string& id) {
  const auto& ids = registered_identities();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<IdentityReport> run_identity(const std::string& id, const VerifyConfig& cfg,
                                         const Model& model) {
  const double t = cfg.horizon;
  const auto one = CylinderFunctional::one();
  const auto hit = StoppingRule::min_of(StoppingRule::hitting(1.0, t), StoppingRule::deterministic(t));
  const std::vector<StoppingRule> mf_rules = {StoppingRule::deterministic(0.25 * t),
                                              StoppingRule::deterministic(t), hit};
  if (id == "master") return {verify_master(model, one, t, cfg)};
  if (id == "master_cylinder") {
    return {verify_master(Model::abs_bm(), CylinderFunctional::abs_at_most(0.5 * t, 0.5), t, cfg)};
  }
  if (id == "stopping") return {verify_stopping(Model::abs_bm(), one, hit, cfg)};
  if (id == "class_d") return {verify_class_d(one, StoppingRule::deterministic(0.5 * t), cfg)};
  if (id == "doob") return {verify_doob(one, StoppingRule::deterministic(t), cfg)};
  if (id == "nf_density") {
    return {verify_nf_density(Model::abs_bm(), TestFunction::exponential(1.0), one, t, cfg)};
  }
  if (id == "ainf_abs_bm") {
    return {verify_ainf_image(AinfModel::kAbsBm, TestFunction::indicator(1.0), cfg)};
  }
  if (id == "ainf_class_d") {
    return {verify_ainf_image(AinfModel::kClassD, TestFunction::indicator(1.0), cfg)};
  }
  if (id == "mf_constancy") {
    return verify_martingale_constancy(Model::abs_bm(), TestFunction::exponential(1.0), mf_rules,
                                       cfg);
  }
  if (id == "mf_constancy_drawdown") {
    return verify_martingale_constancy(Model::drawdown(), TestFunction::exponential(1.0), mf_rules,
                                       cfg);
  }
  if (id == "drawdown_wminus") return {verify_master(Model::drawdown(), one, t, cfg)};
  if (id == "azema_unit") return {verify_azema(0.5, one, t, cfg)};
  if (id == "azema_zeros") {
    return {verify_azema(0.5, CylinderFunctional::last_zero_at_most(0.5 * t), t, cfg)};
  }
  if (id == "azema_slope") return {azema_slope(cfg)};
  throw ConfigError("unknown identity id '" + id + "'");
}

}  // namespace sigmaq

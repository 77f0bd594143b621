// Acceptance suite: one line per criterion, exit status 0 iff every criterion
// passes. Run with --only 3,7 to select criteria.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sigmaq/identity_verifier.hpp"
#include "sigmaq/last_passage_pricing.hpp"
#include "sigmaq/q_sampler.hpp"
#include "sigmaq/sigma_functionals.hpp"
#include "sigmaq/special.hpp"
#include "sigmaq/stats.hpp"

using namespace sigmaq;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED{" << what << "}";
    }
  }
};

unsigned g_threads = 0;

VerifyConfig base_config() {
  VerifyConfig cfg;
  cfg.threads = g_threads;
  return cfg;
}

bool near(const EstimatorResult& r, double target, double k) {
  return std::abs(r.mean - target) <= k * r.std_error;
}

bool near_pooled(const EstimatorResult& a, const EstimatorResult& b, double target, double k) {
  return std::abs(a.mean - target) <= k * std::hypot(a.std_error, b.std_error);
}

std::string show(const EstimatorResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.5f+-%.5f", r.mean, r.std_error);
  return buf;
}

void describe(Outcome& o, const IdentityReport& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " z=%.2f", r.z);
  o.detail << " " << r.identity_id.substr(0, r.identity_id.find('[')) << ": lhs=" << show(r.lhs)
           << " rhs=" << show(r.rhs) << buf;
}

const StoppingRule& hit_rule() {
  static const StoppingRule rule =
      StoppingRule::min_of(StoppingRule::hitting(1.0, 1.0), StoppingRule::deterministic(1.0));
  return rule;
}

// 1. Master identity on |B|.
void master_abs_bm(Outcome& o) {
  VerifyConfig big = base_config();
  // 0.01 is about 2.6 pooled standard errors at 1e5 samples; 4e5 puts it
  // above 5.
  big.n = 400000;
  const auto r = verify_master(Model::abs_bm(), CylinderFunctional::one(), 1.0, big);
  describe(o, r);
  o.require(std::abs(r.z) <= 4.0, "|z| <= 4");
  o.require(std::abs(r.difference()) <= 0.01, "|lhs - rhs| <= 0.01");
  o.require(std::abs(r.lhs.mean - kSqrt2OverPi) <= 0.01, "lhs within 0.01 of sqrt(2/pi)");
  o.require(std::abs(r.rhs.mean - kSqrt2OverPi) <= 0.01, "rhs within 0.01 of sqrt(2/pi)");

  const auto c = verify_master(Model::abs_bm(), CylinderFunctional::abs_at_most(0.5, 0.5), 1.0,
                               base_config());
  describe(o, c);
  o.require(std::abs(c.z) <= 4.0, "cylinder |z| <= 4");
}

// 2. Bounded stopping time.
void stopping(Outcome& o) {
  const auto r =
      verify_stopping(Model::abs_bm(), CylinderFunctional::one(), hit_rule(), base_config());
  describe(o, r);
  o.require(std::abs(r.z) <= 4.0, "|z| <= 4");
}

// 3. Class (D) projection.
void class_d(Outcome& o) {
  const auto r =
      verify_class_d(CylinderFunctional::one(), StoppingRule::deterministic(0.5), base_config());
  describe(o, r);
  const double target = std::sqrt(1.0 / kPi);
  o.require(near(r.lhs, target, 3.0), "lhs within 3 se of sqrt(1/pi)");
  o.require(near(r.rhs, target, 3.0), "rhs within 3 se of sqrt(1/pi)");
  o.require(std::abs(r.z) <= 4.0, "|z| <= 4");
}

// 4. Doob extension.
void doob(Outcome& o) {
  const auto r = verify_doob(CylinderFunctional::one(), StoppingRule::deterministic(1.0),
                             base_config());
  describe(o, r);
  const double target = 1.0 / std::sqrt(2.0 * kPi);
  int sides = 0;
  for (const auto& [name, est] : r.components) {
    if (name != "W_PLUS" && name != "W_MINUS") continue;
    ++sides;
    o.detail << " " << name << "=" << show(est);
    o.require(near(est, target, 3.0), name + " within 3 se of 1/sqrt(2 pi)");
  }
  o.require(sides == 2, "both one-sided masses reported");
  o.require(near_pooled(r.lhs, r.rhs, 0.0, 3.0), "signed difference within 3 pooled se of 0");
}

// 5. N^f density relation.
void nf_density(Outcome& o) {
  const auto r = verify_nf_density(Model::abs_bm(), TestFunction::exponential(1.0),
                                   CylinderFunctional::one(), 1.0, base_config());
  describe(o, r);
  o.require(near(r.lhs, 1.0, 3.0), "lhs within 3 se of 1");
  o.require(near(r.rhs, 1.0, 3.0), "rhs within 3 se of 1");
}

// 6. Image of A_inf.
void ainf(Outcome& o) {
  const auto f = TestFunction::indicator(1.0);
  const auto a = verify_ainf_image(AinfModel::kAbsBm, f, base_config());
  describe(o, a);
  o.require(std::abs(a.lhs.mean - 1.0) <= 3.0 * a.lhs.std_error + 1e-12, "Q[f(A_inf)] = 1");

  const double oracle =
      simpson([](double u) { return 2.0 * (1.0 - normal_cdf(u)); }, 0.0, 1.0, 4000);
  const auto b = verify_ainf_image(AinfModel::kClassD, f, base_config());
  describe(o, b);
  o.detail << " quadrature=" << oracle;
  o.require(near(b.lhs, oracle, 3.0), "E[|B_1| 1{L_1 <= 1}] within 3 se of quadrature");
}

// 7. Martingale property of M^f.
void mf_constancy(Outcome& o) {
  const std::vector<StoppingRule> rules = {StoppingRule::deterministic(0.25),
                                           StoppingRule::deterministic(1.0), hit_rule()};
  for (const auto& model : {Model::abs_bm(), Model::drawdown()}) {
    // With a shared seed the drawdown of B is the Levy |B| path itself.
    VerifyConfig cfg = base_config();
    if (model.kind == Model::Kind::kDrawdown) cfg.seed += 1;
    const auto reports =
        verify_martingale_constancy(model, TestFunction::exponential(1.0), rules, cfg);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      o.detail << " " << model.describe() << "@" << rules[i].describe() << "=" << show(r.lhs);
      o.require(near(r.lhs, 1.0, 3.0), "E[M^f_T] within 3 se of 1");
    }
  }
}

// 8. Drawdown under W^-.
void drawdown(Outcome& o) {
  const auto r = verify_master(Model::drawdown(), CylinderFunctional::one(), 1.0, base_config());
  describe(o, r);
  o.require(std::abs(r.z) <= 4.0, "|z| <= 4");
  o.require(near(r.lhs, kSqrt2OverPi, 4.0), "W^- side at sqrt(2/pi)");
  o.require(near(r.rhs, kSqrt2OverPi, 4.0), "P side at sqrt(2/pi)");
}

// 9. Azema identity at alpha = 1/2.
void azema(Outcome& o) {
  const auto r = verify_azema(0.5, CylinderFunctional::one(), 1.0, base_config());
  describe(o, r);
  o.require(std::abs(r.z) <= 4.0, "|z| <= 4");
  o.require(near(r.rhs, kSqrt2OverPi, 4.0), "rhs at sqrt(2/pi)");
  const auto s = azema_slope(base_config());
  describe(o, s);
  o.require(near(s.lhs, kSqrtPiOver2, 3.0), "slope within 3 se of sqrt(pi/2)");
}

// 10. Put via last passage times.
void pricing(Outcome& o) {
  const std::size_t n = 100000;
  const std::uint64_t seed = base_config().seed;
  const PutSpec spec;
  const double closed = bs_closed_form(1.0, 1.0, 1.0);
  o.detail << " closed=" << closed;
  o.require(std::abs(closed - 0.38292) < 5e-5, "closed form 0.38292");
  const auto reports = price_report(spec, n, seed, 4.0, g_threads);
  EstimatorResult mc, last;
  for (const auto& r : reports) {
    if (r.identity_id.rfind("put.mc_vs_closed", 0) == 0) mc = r.lhs;
    if (r.identity_id.rfind("put.lastpassage_vs_closed", 0) == 0) last = r.lhs;
  }
  o.detail << " mc=" << show(mc) << " KP(g<=t)=" << show(last);
  o.require(near_pooled(mc, last, closed, 3.0), "MC put within 3 pooled se");
  o.require(near_pooled(last, mc, closed, 3.0), "last passage within 3 pooled se");
  o.require(std::abs(mc.mean - last.mean) <= 3.0 * std::hypot(mc.std_error, last.std_error),
            "MC vs last passage within 3 pooled se");

  PutSpec wide = spec;
  wide.maturity = 4.0;
  const auto curve = last_passage_curve(wide, {0.25, 0.5, 1.0, 2.0, 3.0, 4.0}, n, seed, g_threads);
  bool monotone = true;
  for (std::size_t i = 1; i < curve.size(); ++i) monotone &= curve[i].mean >= curve[i - 1].mean;
  o.require(monotone, "P(g_K <= t) nondecreasing in t");
  const double at4 = 2.0 * normal_cdf(1.0) - 1.0;
  o.detail << " t=4:" << show(curve.back());
  o.require(near(curve.back(), at4, 3.0), "t = 4 matches 2 Phi(1) - 1");

  PutSpec far = spec;
  far.t_max = 16.0;
  const auto a = last_passage_cdf(spec, n, seed, g_threads);
  const auto b = last_passage_cdf(far, n, seed, g_threads);
  o.detail << " Tmax16=" << show(b);
  o.require(near_pooled(a, b, b.mean, 3.0), "T_max = 8 vs 16 within 3 pooled se");
}

// 11. Structural properties.
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_reports(const std::vector<IdentityReport>& a, const std::vector<IdentityReport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.identity_id != y.identity_id || x.verdict != y.verdict || x.n != y.n ||
        x.seed != y.seed || !same_bits(x.lhs.mean, y.lhs.mean) ||
        !same_bits(x.lhs.std_error, y.lhs.std_error) || !same_bits(x.rhs.mean, y.rhs.mean) ||
        !same_bits(x.rhs.std_error, y.rhs.std_error) || !same_bits(x.z, y.z) ||
        !same_bits(x.bias_budget(), y.bias_budget())) {
      return false;
    }
  }
  return true;
}

void structural(Outcome& o) {
  const std::size_t seeds = 10000;
  const VerifyConfig cfg = base_config();
  const TimeGrid grid = cfg.grid();
  const double eps = SamplerOptions{}.eps_for(grid.step());

  using Builder = std::function<ClassSigmaPath(std::uint64_t)>;
  const std::vector<std::pair<std::string, Builder>> builders = {
      {"abs_bm", [&](std::uint64_t s) { return build_abs_bm_levy(s, grid); }},
      {"drawdown", [&](std::uint64_t s) { return build_drawdown(simulate_bm(s, grid)); }},
      {"drawdown_exp",
       [&](std::uint64_t s) { return build_drawdown(simulate_exp_martingale(s, grid, 1.0)); }},
      {"positive_part",
       [&](std::uint64_t s) { return build_positive_part(simulate_bm(s, grid), 0.01); }},
      {"signed_abs",
       [&](std::uint64_t s) {
         return build_signed_bm(simulate_bm_local_time(s, grid), SignedFamily::kAbs);
       }},
      {"signed_plus",
       [&](std::uint64_t s) {
         return build_signed_bm(simulate_bm_local_time(s, grid), SignedFamily::kPlus);
       }},
      {"signed_minus",
       [&](std::uint64_t s) {
         return build_signed_bm(simulate_bm_local_time(s, grid), SignedFamily::kMinus);
       }},
      {"bessel_scale",
       [&](std::uint64_t s) { return build_bessel_scale(simulate_bessel(s, grid, 0.6), 0.7, eps); }},
      {"azema",
       [&](std::uint64_t s) { return azema_projection(build_abs_bm_levy(s, grid), 0.5); }},
  };
  for (const auto& [name, build] : builders) {
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < seeds; ++i) {
      bad += !is_class_sigma(build(derive_seed(cfg.seed, i, Stream::kPath)));
    }
    o.require(bad == 0, name + " carried on zeros (" + std::to_string(bad) + " violations)");
  }

  // Spliced samples: class (Sigma), A_inf = l and g = tau_l exactly.
  const std::vector<MeasureTag> tags = {MeasureTag::q_abs_bm(),     MeasureTag::w(),
                                        MeasureTag::w_plus(),       MeasureTag::w_minus(),
                                        MeasureTag::q_bessel(0.6), MeasureTag::s_azema(0.5)};
  std::size_t spliced = 0;
  for (const auto& tag : tags) {
    const double c = tag.kind == MeasureTag::Kind::kSAzema ? azema_constant(tag.param) : 1.0;
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < seeds; ++i) {
      Rng rng(derive_seed(cfg.seed, i, Stream::kLevel));
      const double level = LevelProposal::exponential(1.0).sample(rng);
      const auto s = sample_q_window(tag, level, derive_seed(cfg.seed, i, Stream::kPath), grid);
      const auto& sig = s.sigma;
      const std::size_t end = sig.size() - 1;
      bool ok = is_class_sigma(sig);
      if (s.spliced()) {
        ++spliced;
        ok &= std::abs(sig.a.back() * c - level) <= 1e-12 * level;
        ok &= last_zero(sig, end) == s.splice_index;
      } else {
        ok &= sig.a.back() * c <= level;
      }
      bad += !ok;
    }
    o.require(bad == 0, tag.describe() + " splicing exact (" + std::to_string(bad) + " violations)");
  }
  o.detail << " constructions=" << builders.size() << "x" << seeds << " spliced=" << spliced;

  // W = W^+ + W^- on {g <= 1}.
  const auto H = QIntegrand::of([](const WeightedSample& s) { return s.spliced() ? 1.0 : 0.0; });
  SamplerOptions opts;
  opts.threads = g_threads;
  const std::size_t n = cfg.n;
  const auto w = q_integral(MeasureTag::w(), H, TestFunction::indicator(8.0),
                            LevelProposal::exponential(1.0), n, derive_seed(cfg.seed, 1), grid,
                            opts);
  const auto wp = q_integral(MeasureTag::w_plus(), H, TestFunction::indicator(4.0),
                             LevelProposal::exponential(2.0), n, derive_seed(cfg.seed, 2), grid,
                             opts);
  const auto wm = q_integral(MeasureTag::w_minus(), H, TestFunction::indicator(4.0),
                             LevelProposal::exponential(2.0), n, derive_seed(cfg.seed, 3), grid,
                             opts);
  const double gap = w.mean - wp.mean - wm.mean;
  const double se = std::sqrt(w.std_error * w.std_error + wp.std_error * wp.std_error +
                              wm.std_error * wm.std_error);
  o.detail << " W=" << show(w) << " W+ + W-=" << wp.mean + wm.mean;
  o.require(std::abs(gap) <= 3.0 * se, "W = W^+ + W^- within 3 se");

  // Determinism across repeated runs and thread counts.
  VerifyConfig one = base_config(), many = base_config();
  one.n = many.n = 20000;
  one.threads = 1;
  many.threads = 4;
  bool identical = true;
  for (const std::string id : {"master", "doob", "mf_constancy_drawdown", "azema_unit"}) {
    const auto first = run_identity(id, one);
    identical &= same_reports(first, run_identity(id, one));
    identical &= same_reports(first, run_identity(id, many));
  }
  const auto p1 = price_report(PutSpec{}, 20000, cfg.seed, 4.0, 1);
  identical &= same_reports(p1, price_report(PutSpec{}, 20000, cfg.seed, 4.0, 4));
  o.require(identical, "bitwise-identical reports across runs and thread counts");
}

// 12. Mutation power.
void mutation(Outcome& o) {
  VerifyConfig cfg = base_config();
  cfg.drop_indicator = true;
  const auto r = verify_master(Model::abs_bm(), CylinderFunctional::one(), 1.0, cfg);
  describe(o, r);
  o.require(std::abs(r.z) > 10.0, "|z| > 10 without 1{g <= t}");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');
  app.add_option("--threads", g_threads, "Worker threads (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, void (*)(Outcome&)>> criteria = {
      {"master identity on |B|", master_abs_bm},
      {"bounded stopping time", stopping},
      {"class (D) projection", class_d},
      {"Doob extension", doob},
      {"N^f density relation", nf_density},
      {"A_inf image", ainf},
      {"martingale property of M^f", mf_constancy},
      {"drawdown vs W^-", drawdown},
      {"Azema identity", azema},
      {"put via last passage", pricing},
      {"structural properties", structural},
      {"mutation power", mutation},
  };
  const std::set<int> selected(only.begin(), only.end());
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%.0fs)%s\n", o.pass ? "PASS" : "FAIL", id,
                criteria[i].first.c_str(), secs, o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "check.hpp"
#include "sigmaq/cylinder.hpp"
#include "sigmaq/error.hpp"
#include "sigmaq/sigma_functionals.hpp"
#include "sigmaq/special.hpp"
#include "sigmaq/stats.hpp"
#include "sigmaq/stopping.hpp"

using namespace sigmaq;
using sigmaq::test::within_se;

namespace {

double half_normal_cdf(double x) { return x <= 0.0 ? 0.0 : 2.0 * normal_cdf(x) - 1.0; }

ClassSigmaPath hand_path(std::vector<double> x, std::vector<double> a,
                         std::vector<std::uint8_t> marks) {
  ClassSigmaPath p;
  p.grid = TimeGrid(0.25, x.size() - 1);
  p.x = std::move(x);
  p.a = std::move(a);
  p.zero_mark = std::move(marks);
  p.model_tag = "hand";
  return p;
}

}  // namespace

TEST_CASE("zero functionals on a hand-built path") {
  //          t: 0    .25  .5   .75  1
  auto p = hand_path({0.0, 0.3, 0.0, 0.2, 0.4}, {0.0, 0.0, 0.1, 0.1, 0.1}, {1, 0, 1, 0, 0});
  CHECK(is_class_sigma(p));
  CHECK(last_zero(p, 1) == 0u);
  CHECK(last_zero(p, 4) == 2u);
  CHECK(first_zero_after(p, 0) == 2u);
  CHECK_FALSE(first_zero_after(p, 2).has_value());
  CHECK(inverse_local_time(p, 0.05) == 2u);
  CHECK_FALSE(inverse_local_time(p, 0.1).has_value());
  CHECK(last_zero_time(p, 0.9) == doctest::Approx(0.5));
  CHECK(first_zero_after_time(p, 0.1) == doctest::Approx(0.5));

  // Growth of a on an interval that never touches zero.
  auto bad = hand_path({0.0, 0.3, 0.4}, {0.0, 0.0, 0.2}, {1, 0, 0});
  CHECK_FALSE(carried_on_zeros(bad));
  CHECK_FALSE(is_class_sigma(bad));
  auto negative = hand_path({0.0, -0.1}, {0.0, 0.0}, {1, 0});
  CHECK_FALSE(is_class_sigma(negative));
}

TEST_CASE("M^f transform") {
  auto p = hand_path({0.0, 0.3, 0.0}, {0.0, 0.0, 0.5}, {1, 0, 1});
  const auto f = TestFunction::exponential(1.0);
  const auto m = mf_transform(p, f);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(1.0 + 0.3));
  CHECK(m[2] == doctest::Approx(std::exp(-0.5)));
  CHECK(mf_value(p, f, 1) == m[1]);
}

TEST_CASE("drawdown of a hand-built path") {
  PathSample s;
  s.grid = TimeGrid(0.25, 3);
  s.spec = ProcessSpec::brownian();
  s.values = {0.0, 1.0, 0.5, 2.0};
  s.interval_max = {1.0, 1.2, 2.0};
  s.interval_min = {0.0, 0.5, 0.5};
  const auto d = build_drawdown(s);
  CHECK(d.x == std::vector<double>{0.0, 0.0, 0.7, 0.0});
  CHECK(d.a == std::vector<double>{0.0, 1.0, 1.2, 2.0});
  CHECK(d.signed_values == s.values);
  CHECK(is_class_sigma(d));
}

TEST_CASE("Levy construction: |B| and L marginals") {
  const auto grid = TimeGrid::make(1.0 / 64.0, 1.0);
  const std::size_t n = 4000;
  std::vector<double> x(n), a(n), g_le_half(n), tau_beyond(n);
  const std::size_t half = grid.index_of(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = build_abs_bm_levy(derive_seed(21, i), grid);
    REQUIRE(is_class_sigma(p));
    x[i] = p.x.back();
    a[i] = p.a.back();
    const auto g = last_zero(p, grid.steps());
    REQUIRE(g.has_value());
    g_le_half[i] = *g <= half ? 1.0 : 0.0;
    tau_beyond[i] = inverse_local_time(p, 1.0).has_value() ? 0.0 : 1.0;
  }
  const double crit = ks_critical(1e-3, n);
  CHECK(ks_statistic(x, half_normal_cdf) < crit);
  CHECK(ks_statistic(a, half_normal_cdf) < crit);
  // Arcsine law: P(g_1 <= 1/2) = 1/2.
  CHECK(within_se(g_le_half, 0.5));
  // P(tau_1 > 1) = P(L_1 < 1) = 2 Phi(1) - 1.
  CHECK(within_se(tau_beyond, 2.0 * normal_cdf(1.0) - 1.0));
}

TEST_CASE("every construction is carried on its zeros") {
  const auto grid = TimeGrid::make(1.0 / 128.0, 1.0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto seed = derive_seed(22, i);
    CHECK(is_class_sigma(build_abs_bm_levy(seed, grid)));
    CHECK(is_class_sigma(build_drawdown(simulate_bm(seed, grid))));
    CHECK(is_class_sigma(build_drawdown(simulate_exp_martingale(seed, grid, 1.0))));
    CHECK(is_class_sigma(build_positive_part(simulate_bm(seed, grid), 0.05)));
    const auto lt = simulate_bm_local_time(seed, grid);
    for (auto fam : {SignedFamily::kAbs, SignedFamily::kPlus, SignedFamily::kMinus}) {
      CHECK(is_class_sigma(build_signed_bm(lt, fam)));
    }
    const auto bes = simulate_bessel(seed, grid, 0.6);
    const auto scale = build_bessel_scale(bes, 0.7, 0.03);
    CHECK(is_class_sigma(scale));
    CHECK(is_class_sigma(azema_projection(build_abs_bm_levy(seed, grid), 0.5)));
  }
}

TEST_CASE("signed family: |Y| = Y^+ + Y^- and A splits in half") {
  const auto grid = TimeGrid::make(1.0 / 64.0, 1.0);
  const auto lt = simulate_bm_local_time(23, grid);
  const auto abs = build_signed_bm(lt, SignedFamily::kAbs);
  const auto plus = build_signed_bm(lt, SignedFamily::kPlus);
  const auto minus = build_signed_bm(lt, SignedFamily::kMinus);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(abs.x[i] == doctest::Approx(plus.x[i] + minus.x[i]));
    CHECK(plus.a[i] == doctest::Approx(0.5 * abs.a[i]));
    CHECK(minus.a[i] == doctest::Approx(0.5 * abs.a[i]));
  }
}

TEST_CASE("positive part: half local time has mean E[B_1^+]") {
  const auto grid = TimeGrid::make(1.0 / 1024.0, 1.0);
  const std::size_t n = 3000;
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = build_positive_part(simulate_bm(derive_seed(24, i), grid), 0.05).a.back();
  }
  // Tanaka: E[L_1 / 2] = E[B_1^+] = 1 / sqrt(2 pi); occupation smoothing adds O(eps).
  const auto r = summarize(a);
  CHECK(std::abs(r.mean - 1.0 / std::sqrt(2.0 * kPi)) < 4.0 * r.std_error + 0.02);
}

TEST_CASE("Bessel compensator at alpha = 1/2 matches E|y + sqrt(h) Z| - y") {
  const double h = 0.01;
  for (double y : {0.0, 0.02, 0.1, 0.5}) {
    const double s = std::sqrt(h);
    const double exact =
        y * (2.0 * normal_cdf(y / s) - 1.0) + 2.0 * s * normal_pdf(y / s) - y;
    CHECK(bessel_compensator_increment(y, 0.5, h) == doctest::Approx(exact).epsilon(1e-6));
  }
  CHECK(bessel_compensator_increment(0.3, 0.7, 0.01) >= 0.0);
}

TEST_CASE("Bessel power: E[Y_t^{2 alpha}] = (2t)^alpha / Gamma(1 - alpha) = E[A_t]") {
  const double alpha = 0.3, t = 1.0;
  const double delta = 2.0 * (1.0 - alpha);
  const auto grid = TimeGrid::make(1.0 / 256.0, t);
  const std::size_t n = 4000;
  std::vector<double> x(n), a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = build_bessel_scale(simulate_bessel(derive_seed(25, i), grid, delta), alpha,
                                      3.5 * std::sqrt(grid.step()));
    x[i] = p.x.back();
    a[i] = p.a.back();
  }
  const double expected = std::pow(2.0 * t, alpha) / std::tgamma(1.0 - alpha);
  CHECK(within_se(x, expected));
  const auto ra = summarize(a);
  CHECK(std::abs(ra.mean - expected) < 4.0 * ra.std_error + 0.05 * expected);
  CHECK_THROWS_AS(build_bessel_scale(simulate_bessel(1, grid, 1.0), alpha, 0.01), ConfigError);
}

TEST_CASE("Bessel d = 1 increasing process matches the Levy local time") {
  const auto grid = TimeGrid::make(1.0 / 4096.0, 1.0);
  const double eps = 3.5 * std::sqrt(grid.step());
  const std::size_t n = 10000;
  std::vector<double> bessel(n), levy(n);
  for (std::size_t i = 0; i < n; ++i) {
    bessel[i] = build_bessel_scale(simulate_bessel(derive_seed(26, i), grid, 1.0), 0.5, eps).a.back();
    levy[i] = build_abs_bm_levy(derive_seed(27, i), grid).a.back();
  }
  CHECK(ks_statistic(bessel, levy) < 0.02);
}

TEST_CASE("Azema projection of |B|") {
  const auto grid = TimeGrid::make(1.0 / 16.0, 1.0);
  const auto base = build_abs_bm_levy(26, grid);
  const auto az = azema_projection(base, 0.5);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto g = last_zero(base, i);
    REQUIRE(g.has_value());
    CHECK(az.x[i] == doctest::Approx(std::sqrt(grid.time(i) - grid.time(*g))));
    CHECK(az.a[i] == doctest::Approx(base.a[i] / azema_constant(0.5)));
  }
  CHECK(azema_constant(0.5) == doctest::Approx(kSqrtPiOver2));
}

TEST_CASE("stopping rules") {
  auto p = hand_path({0.0, 0.3, 1.2, 0.2, 0.4}, {0.0, 0.0, 0.0, 0.0, 0.0}, {1, 0, 0, 0, 0});
  CHECK(StoppingRule::deterministic(0.5).evaluate_index(p) == 2u);
  CHECK(StoppingRule::hitting(1.0, 1.0).evaluate_index(p) == 2u);
  CHECK(StoppingRule::hitting(5.0, 0.75).evaluate_index(p) == 3u);
  const auto both =
      StoppingRule::min_of(StoppingRule::hitting(1.0, 1.0), StoppingRule::deterministic(0.25));
  CHECK(both.evaluate_index(p) == 1u);
  CHECK(both.cap() == doctest::Approx(0.25));
  CHECK_THROWS_AS(StoppingRule::deterministic(2.0).validate(p.grid), ConfigError);

  // A bridge crossing inside an interval is seen through the extrema.
  PathSample s;
  s.grid = TimeGrid(0.5, 2);
  s.spec = ProcessSpec::brownian();
  s.values = {0.0, 0.5, 0.2};
  s.interval_max = {0.6, 1.1};
  s.interval_min = {0.0, 0.2};
  CHECK(StoppingRule::hitting(1.0, 1.0).evaluate_index(s) == 2u);
}

TEST_CASE("cylinder functionals") {
  auto p = hand_path({0.0, 0.3, 0.0, 0.2, 0.4}, {0.0, 0.0, 0.1, 0.1, 0.1}, {1, 0, 1, 0, 0});
  const auto f = CylinderFunctional::abs_at_most(0.25, 0.5);
  CHECK(f.evaluate(p, 4) == 1.0);
  CHECK(CylinderFunctional::abs_at_most(0.25, 0.1).evaluate(p, 4) == 0.0);
  // Times beyond t are read at t.
  CHECK(CylinderFunctional::abs_at_most(1.0, 0.1).evaluate(p, 0) == 1.0);
  CHECK(CylinderFunctional::last_zero_at_most(0.5).evaluate(p, 4) == 1.0);
  CHECK(CylinderFunctional::last_zero_at_most(0.25).evaluate(p, 4) == 0.0);
  CHECK(CylinderFunctional::one().constant_value() == 1.0);

  CylinderFunctional wild("wild", {0.0}, [](const CylinderInput&) { return 3.0; }, 1.0);
  CHECK_THROWS_AS(wild.evaluate(p, 1), std::logic_error);
}

TEST_CASE("M^f bounds and monotone zero functionals on random paths") {
  const auto grid = TimeGrid::make(1.0 / 64.0, 1.0);
  const double lambda = 1.5;
  const auto f = TestFunction::exponential(lambda);
  const std::vector<double> levels = {0.05, 0.1, 0.2, 0.4, 0.8};
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto p = build_abs_bm_levy(derive_seed(24, i), grid);
    CHECK(p.a[0] == 0.0);
    const auto m = mf_transform(p, f);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      CHECK(m[k] >= 0.0);
      CHECK(m[k] <= 1.0 + lambda * p.x[k] + 1e-12);
      if (k > 0) CHECK(p.a[k] >= p.a[k - 1]);
    }
    std::optional<std::size_t> prev_g, prev_d;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto g = last_zero(p, k);
      if (prev_g) CHECK((g && *g >= *prev_g));
      prev_g = g;
      const auto d = first_zero_after(p, k);
      if (prev_d && d) CHECK(*d >= *prev_d);
      if (g && d) CHECK((*g <= k && k < *d));
      if (d) prev_d = d;
    }
    std::optional<std::size_t> prev_tau;
    for (double l : levels) {
      const auto tau = inverse_local_time(p, l);
      if (prev_tau) CHECK((!tau || *tau >= *prev_tau));
      if (tau) prev_tau = tau;
    }
  }
  const auto zero = mf_transform(build_abs_bm_levy(1, grid), TestFunction::zero());
  CHECK(std::all_of(zero.begin(), zero.end(), [](double v) { return v == 0.0; }));
}

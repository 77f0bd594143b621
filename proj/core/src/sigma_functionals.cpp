#include "sigmaq/sigma_functionals.hpp"

#include <algorithm>
#include <cmath>

#include "sigmaq/error.hpp"
#include "sigmaq/special.hpp"

namespace sigmaq {

namespace {

void mark_by_threshold(ClassSigmaPath& path) {
  path.zero_mark.assign(path.x.size(), 0);
  for (std::size_t i = 0; i < path.x.size(); ++i) {
    if (path.x[i] <= path.zero_tol) path.zero_mark[i] = 1;
  }
}

}  // namespace

bool carried_on_zeros(const ClassSigmaPath& path) {
  for (std::size_t i = 0; i + 1 < path.a.size(); ++i) {
    if (path.a[i + 1] > path.a[i]) {
      const bool touches = std::min(path.x[i], path.x[i + 1]) <= path.zero_tol ||
                           path.zero_mark[i + 1] != 0;
      if (!touches) return false;
    }
  }
  return true;
}

bool is_class_sigma(const ClassSigmaPath& path) {
  const std::size_t n = path.grid.size();
  if (path.x.size() != n || path.a.size() != n || path.zero_mark.size() != n) return false;
  if (path.a.front() != 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(path.x[i] >= 0.0)) return false;
    if (i > 0 && path.a[i] < path.a[i - 1]) return false;
  }
  return carried_on_zeros(path);
}

ClassSigmaPath build_drawdown(const PathSample& mart) {
  if (!mart.spec.is_brownian()) {
    throw UnsupportedError("drawdown needs a Brownian or exponential-martingale path");
  }
  const std::size_t n = mart.values.size();
  ClassSigmaPath out;
  out.grid = mart.grid;
  out.model_tag = "drawdown";
  out.signed_values = mart.values;
  out.x.resize(n);
  out.a.resize(n);
  out.zero_mark.assign(n, 0);
  const double m0 = mart.values.front();
  double running = m0;
  out.x[0] = 0.0;
  out.a[0] = 0.0;
  out.zero_mark[0] = 1;
  const bool refined = mart.has_extrema();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double peak = refined ? mart.interval_max[i] : mart.values[i + 1];
    if (peak > running) {
      running = peak;
      out.zero_mark[i + 1] = 1;
    }
    out.a[i + 1] = running - m0;
    out.x[i + 1] = running - mart.values[i + 1];
  }
  return out;
}

ClassSigmaPath build_abs_bm_levy(std::uint64_t seed, const TimeGrid& grid) {
  ClassSigmaPath out = build_drawdown(simulate_bm(seed, grid, 0.0));
  out.model_tag = "abs_bm";
  out.signed_values.clear();
  return out;
}

ClassSigmaPath build_positive_part(const PathSample& mart, double eps) {
  if (mart.spec.kind != ProcessKind::kBrownianMotion) {
    throw UnsupportedError("positive part is built from a Brownian path");
  }
  if (!(eps > 0.0)) throw ConfigError("occupation half-width eps must be > 0");
  const std::size_t n = mart.values.size();
  const double h = mart.grid.step();
  ClassSigmaPath out;
  out.grid = mart.grid;
  out.model_tag = "positive_part";
  out.zero_tol = eps;
  out.signed_values = mart.values;
  out.x.resize(n);
  out.a.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = std::max(mart.values[i], 0.0);
  // Half the local time: occupation of [-eps, eps] / (2 eps), halved.
  const double scale = 0.5 * h / (4.0 * eps);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double hits = (std::abs(mart.values[i]) <= eps ? 1.0 : 0.0) +
                        (std::abs(mart.values[i + 1]) <= eps ? 1.0 : 0.0);
    out.a[i + 1] = out.a[i] + scale * hits;
  }
  mark_by_threshold(out);
  return out;
}

ClassSigmaPath build_signed_bm(const PathSample& bm, SignedFamily family) {
  if (bm.spec.kind != ProcessKind::kBrownianMotion || !bm.has_local_time()) {
    throw UnsupportedError("signed family needs a Brownian path with interval local times");
  }
  const std::size_t n = bm.values.size();
  ClassSigmaPath out;
  out.grid = bm.grid;
  out.signed_values = bm.values;
  out.x.resize(n);
  out.a.assign(n, 0.0);
  out.zero_mark.assign(n, 0);
  double weight = 1.0;
  switch (family) {
    case SignedFamily::kAbs:
      out.model_tag = "abs_bm_signed";
      for (std::size_t i = 0; i < n; ++i) out.x[i] = std::abs(bm.values[i]);
      break;
    case SignedFamily::kPlus:
      out.model_tag = "bm_plus";
      weight = 0.5;
      for (std::size_t i = 0; i < n; ++i) out.x[i] = std::max(bm.values[i], 0.0);
      break;
    case SignedFamily::kMinus:
      out.model_tag = "bm_minus";
      weight = 0.5;
      for (std::size_t i = 0; i < n; ++i) out.x[i] = std::max(-bm.values[i], 0.0);
      break;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out.x[i] <= 0.0) out.zero_mark[i] = 1;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lt = bm.interval_local_time[i];
    out.a[i + 1] = out.a[i] + weight * lt;
    if (lt > 0.0) out.zero_mark[i + 1] = 1;
  }
  return out;
}

double bessel_compensator_increment(double y, double alpha, double step) {
  // Y_{t+h}^2 = h * chi'^2_d(y^2 / h) with d = 2(1 - alpha); the Poisson
  // mixture gives E[(chi^2_{d+2N})^alpha] = 2^alpha Gamma(1+N) / Gamma(1-alpha+N).
  const double lambda = y * y / step;
  const double half = 0.5 * lambda;
  if (half == 0.0) return std::pow(2.0 * step, alpha) / std::tgamma(1.0 - alpha);
  const double log_half = std::log(half);
  const double mode = std::floor(half);
  const double spread = 12.0 * std::sqrt(half + 1.0) + 40.0;
  const auto lo = static_cast<long>(std::max(0.0, mode - spread));
  const auto hi = static_cast<long>(mode + spread);
  double sum = 0.0;
  for (long k = lo; k <= hi; ++k) {
    const double n = static_cast<double>(k);
    const double log_term =
        -half + n * log_half - std::lgamma(n + 1.0 - alpha);
    sum += std::exp(log_term);
  }
  const double expected = std::pow(2.0 * step, alpha) * sum;
  return std::max(0.0, expected - std::pow(y, 2.0 * alpha));
}

ClassSigmaPath build_bessel_scale(const PathSample& bessel, double alpha, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(eps > 0.0)) throw ConfigError("zero threshold eps must be > 0");
  const double expected_delta = 2.0 * (1.0 - alpha);
  if (bessel.spec.kind != ProcessKind::kBessel ||
      std::abs(bessel.spec.delta - expected_delta) > 1e-12) {
    throw ConfigError("Bessel dimension must equal 2(1 - alpha) = " +
                      std::to_string(expected_delta));
  }
  const std::size_t n = bessel.values.size();
  const double h = bessel.grid.step();
  ClassSigmaPath out;
  out.grid = bessel.grid;
  out.model_tag = "bessel_scale";
  out.zero_tol = std::pow(eps, 2.0 * alpha);
  out.signed_values = bessel.values;
  out.x.resize(n);
  out.a.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = std::pow(bessel.values[i], 2.0 * alpha);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double y = bessel.values[i];
    double inc = 0.0;
    if (std::min(y, bessel.values[i + 1]) <= eps) {
      inc = bessel_compensator_increment(y, alpha, h);
    }
    out.a[i + 1] = out.a[i] + inc;
  }
  mark_by_threshold(out);
  return out;
}

ClassSigmaPath azema_projection(const ClassSigmaPath& sigma, double alpha) {
  const double c = azema_constant(alpha);
  ClassSigmaPath out = sigma;
  out.model_tag = sigma.model_tag + "_azema";
  out.zero_tol = 0.0;
  std::optional<std::size_t> g;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma.zero_mark[i]) g = i;
    if (!g) throw ConfigError("Azema projection needs a path that starts at a zero");
    out.x[i] = std::pow(sigma.grid.time(i) - sigma.grid.time(*g), alpha);
    out.a[i] = sigma.a[i] / c;
  }
  return out;
}

std::optional<std::size_t> last_zero(const ClassSigmaPath& sigma, std::size_t t_index) {
  if (sigma.zero_mark.empty()) return std::nullopt;
  std::size_t i = std::min(t_index, sigma.zero_mark.size() - 1) + 1;
  while (i-- > 0) {
    if (sigma.zero_mark[i]) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_zero_after(const ClassSigmaPath& sigma, std::size_t t_index) {
  for (std::size_t i = t_index + 1; i < sigma.zero_mark.size(); ++i) {
    if (sigma.zero_mark[i]) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> inverse_local_time(const ClassSigmaPath& sigma, double level) {
  const auto it = std::upper_bound(sigma.a.begin(), sigma.a.end(), level);
  if (it == sigma.a.end()) return std::nullopt;
  return static_cast<std::size_t>(it - sigma.a.begin());
}

std::optional<double> last_zero_time(const ClassSigmaPath& sigma, double t) {
  const auto i = last_zero(sigma, sigma.grid.floor_index(t));
  if (!i) return std::nullopt;
  return sigma.grid.time(*i);
}

std::optional<double> first_zero_after_time(const ClassSigmaPath& sigma, double t) {
  const auto i = first_zero_after(sigma, sigma.grid.floor_index(t));
  if (!i) return std::nullopt;
  return sigma.grid.time(*i);
}

double mf_value(const ClassSigmaPath& sigma, const TestFunction& f, std::size_t index) {
  const double a = sigma.a[index];
  return f.tail(a) + f.value(a) * sigma.x[index];
}

std::vector<double> mf_transform(const ClassSigmaPath& sigma, const TestFunction& f) {
  std::vector<double> out(sigma.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mf_value(sigma, f, i);
  return out;
}

}  // namespace sigmaq

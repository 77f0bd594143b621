#include "sigmaq/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigmaq/error.hpp"

namespace sigmaq {

namespace {

constexpr int kMaxRefineDepth = 8;
constexpr double kRefineThreshold = 1e-9;

bool is_bessel_delta(double delta) {
  return (delta > 0.0 && delta < 2.0) || delta == 3.0;
}

struct IntervalDraw {
  double max;
  double min;
  double local_time;
};

// Leaf draw of (max, min, local time) for a bridge from a to b. The zero-hit
// event is shared between the extremum on the zero side and the local time.
void draw_leaf(double a, double b, double h, Rng& rng, IntervalDraw& out) {
  const double mx = bridge_max_from_uniform(a, b, h, rng.uniform());
  const double mn = bridge_min_from_uniform(a, b, h, rng.uniform());
  const double u = rng.uniform();
  double lt = 0.0;
  if (a > 0.0 && b > 0.0) {
    if (mn <= 0.0) lt = bridge_local_time_from_uniform(std::abs(a) + std::abs(b), 0.0, h, u);
  } else if (a < 0.0 && b < 0.0) {
    if (mx >= 0.0) lt = bridge_local_time_from_uniform(std::abs(a) + std::abs(b), 0.0, h, u);
  } else {
    lt = bridge_local_time_from_uniform(a, b, h, u);
  }
  out.max = std::max(out.max, mx);
  out.min = std::min(out.min, mn);
  out.local_time += lt;
}

void draw_refined(double a, double b, double h, double running_max, int depth, Rng& rng,
                  IntervalDraw& out) {
  const bool near_zero = bridge_hit_probability(a, b, h, 0.0) > kRefineThreshold;
  const bool near_max = bridge_hit_probability(a, b, h, running_max) > kRefineThreshold;
  if (depth >= kMaxRefineDepth || !near_zero || !near_max) {
    draw_leaf(a, b, h, rng, out);
    return;
  }
  const double half = 0.5 * h;
  const double mid = 0.5 * (a + b) + std::sqrt(0.5 * half) * rng.normal();
  draw_refined(a, mid, half, running_max, depth + 1, rng, out);
  draw_refined(mid, b, half, std::max(running_max, out.max), depth + 1, rng, out);
}

// Appends `steps` Brownian increments (with extrema) starting from the last
// value of `path`.
void append_brownian(PathSample& path, std::size_t steps, Rng& rng) {
  const double h = path.grid.step();
  const double sd = std::sqrt(h);
  double a = path.values.back();
  for (std::size_t i = 0; i < steps; ++i) {
    const double b = a + sd * rng.normal();
    path.interval_max.push_back(bridge_max_from_uniform(a, b, h, rng.uniform()));
    path.interval_min.push_back(bridge_min_from_uniform(a, b, h, rng.uniform()));
    path.values.push_back(b);
    a = b;
  }
}

void append_brownian_local_time(PathSample& path, std::size_t steps, Rng& rng) {
  const double h = path.grid.step();
  const double sd = std::sqrt(h);
  double running_max = path.values.front();
  for (std::size_t i = 0; i < path.interval_max.size(); ++i) {
    running_max = std::max(running_max, path.interval_max[i]);
  }
  double a = path.values.back();
  for (std::size_t i = 0; i < steps; ++i) {
    const double b = a + sd * rng.normal();
    IntervalDraw draw{std::max(a, b), std::min(a, b), 0.0};
    draw_refined(a, b, h, running_max, 0, rng, draw);
    running_max = std::max(running_max, draw.max);
    path.interval_max.push_back(draw.max);
    path.interval_min.push_back(draw.min);
    path.interval_local_time.push_back(draw.local_time);
    path.values.push_back(b);
    a = b;
  }
}

// Exponential martingale: Brownian log path with drift -1/2. A Brownian bridge
// with drift has the driftless bridge law, so log-scale extrema use the same
// inverse CDF with the log endpoints.
void append_exp_martingale(PathSample& path, std::size_t steps, Rng& rng) {
  const double h = path.grid.step();
  const double sd = std::sqrt(h);
  const double x0 = path.spec.x0;
  const double log_x0 = std::log(x0);
  std::size_t i0 = path.values.size() - 1;
  double b = std::log(path.values.back() / x0) + 0.5 * path.grid.time(i0);
  for (std::size_t i = 0; i < steps; ++i) {
    const double b_next = b + sd * rng.normal();
    const double u_max = rng.uniform();
    const double u_min = rng.uniform();
    const double la = log_x0 + b - 0.5 * path.grid.time(i0 + i);
    const double lb = log_x0 + b_next - 0.5 * path.grid.time(i0 + i + 1);
    path.values.push_back(x0 * std::exp(lb));
    path.interval_max.push_back(std::exp(bridge_max_from_uniform(la, lb, h, u_max)));
    path.interval_min.push_back(std::exp(bridge_min_from_uniform(la, lb, h, u_min)));
    b = b_next;
  }
}

void append_bessel(PathSample& path, std::size_t steps, Rng& rng) {
  const double h = path.grid.step();
  const double sign = path.spec.kind == ProcessKind::kNegBessel3 ? -1.0 : 1.0;
  double y2 = path.values.back() * path.values.back();
  for (std::size_t i = 0; i < steps; ++i) {
    y2 = besq_step(y2, path.spec.delta, h, rng);
    path.values.push_back(sign * std::sqrt(y2));
  }
}

PathSample start_path(std::uint64_t seed, const TimeGrid& grid, const ProcessSpec& spec) {
  PathSample path;
  path.grid = TimeGrid(grid.step(), 0);
  path.spec = spec;
  path.seed_id = seed;
  path.values.reserve(grid.size());
  path.values.push_back(spec.kind == ProcessKind::kNegBessel3 ? -spec.x0 : spec.x0);
  if (spec.is_brownian()) {
    path.interval_max.reserve(grid.steps());
    path.interval_min.reserve(grid.steps());
  }
  return path;
}

}  // namespace

ProcessSpec ProcessSpec::bessel(double delta, double x0) {
  if (delta == 3.0) return {ProcessKind::kBessel3, x0, 3.0};
  return {ProcessKind::kBessel, x0, delta};
}

void ProcessSpec::validate() const {
  switch (kind) {
    case ProcessKind::kBrownianMotion:
      if (!std::isfinite(x0)) throw ConfigError("Brownian start must be finite");
      break;
    case ProcessKind::kExpMartingale:
      if (!(x0 > 0.0) || !std::isfinite(x0)) {
        throw ConfigError("exponential martingale requires x0 > 0");
      }
      break;
    case ProcessKind::kBessel:
      if (!(delta > 0.0 && delta < 2.0)) {
        throw ConfigError("Bessel dimension must lie in (0, 2), got " + std::to_string(delta));
      }
      [[fallthrough]];
    case ProcessKind::kBessel3:
    case ProcessKind::kNegBessel3:
      if (!(x0 >= 0.0) || !std::isfinite(x0)) throw ConfigError("Bessel start must be >= 0");
      if (kind != ProcessKind::kBessel && delta != 3.0) {
        throw ConfigError("Bessel(3) kinds fix delta = 3");
      }
      break;
    case ProcessKind::kSpliced:
      break;
  }
}

PathSample simulate_bm(std::uint64_t seed, const TimeGrid& grid, double x0) {
  const auto spec = ProcessSpec::brownian(x0);
  spec.validate();
  Rng rng(seed);
  PathSample path = start_path(seed, grid, spec);
  path.grid = grid;
  append_brownian(path, grid.steps(), rng);
  return path;
}

PathSample simulate_bm_local_time(std::uint64_t seed, const TimeGrid& grid, double x0) {
  const auto spec = ProcessSpec::brownian(x0);
  spec.validate();
  Rng rng(seed);
  PathSample path = start_path(seed, grid, spec);
  path.grid = grid;
  path.interval_local_time.reserve(grid.steps());
  append_brownian_local_time(path, grid.steps(), rng);
  return path;
}

PathSample simulate_exp_martingale(std::uint64_t seed, const TimeGrid& grid, double x0) {
  const auto spec = ProcessSpec::exp_martingale(x0);
  spec.validate();
  Rng rng(seed);
  PathSample path = start_path(seed, grid, spec);
  path.grid = grid;
  append_exp_martingale(path, grid.steps(), rng);
  return path;
}

PathSample simulate_bessel(std::uint64_t seed, const TimeGrid& grid, double delta, double x0) {
  if (!is_bessel_delta(delta)) {
    throw ConfigError("Bessel dimension must lie in (0, 2) or equal 3, got " +
                      std::to_string(delta));
  }
  const auto spec = ProcessSpec::bessel(delta, x0);
  spec.validate();
  Rng rng(seed);
  PathSample path = start_path(seed, grid, spec);
  path.grid = grid;
  append_bessel(path, grid.steps(), rng);
  return path;
}

PathSample simulate(std::uint64_t seed, const TimeGrid& grid, const ProcessSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ProcessKind::kBrownianMotion:
      return simulate_bm(seed, grid, spec.x0);
    case ProcessKind::kExpMartingale:
      return simulate_exp_martingale(seed, grid, spec.x0);
    case ProcessKind::kBessel:
    case ProcessKind::kBessel3:
      return simulate_bessel(seed, grid, spec.delta, spec.x0);
    case ProcessKind::kNegBessel3: {
      Rng rng(seed);
      PathSample path = start_path(seed, grid, spec);
      path.grid = grid;
      append_bessel(path, grid.steps(), rng);
      return path;
    }
    case ProcessKind::kSpliced:
      break;
  }
  throw UnsupportedError("spliced paths are produced by the Q sampler, not simulated directly");
}

PathSample extend_path(const PathSample& sample, double extra_horizon, std::uint64_t seed) {
  if (sample.spec.kind == ProcessKind::kSpliced) {
    throw UnsupportedError("cannot extend a spliced path");
  }
  if (extra_horizon == 0.0) return sample;
  const TimeGrid extra = TimeGrid::make(sample.grid.step(), extra_horizon);
  PathSample out = sample;
  out.grid = sample.grid.extended(extra.steps());
  Rng rng(seed);
  switch (sample.spec.kind) {
    case ProcessKind::kBrownianMotion:
      if (sample.has_local_time()) {
        append_brownian_local_time(out, extra.steps(), rng);
      } else {
        append_brownian(out, extra.steps(), rng);
      }
      break;
    case ProcessKind::kExpMartingale:
      append_exp_martingale(out, extra.steps(), rng);
      break;
    case ProcessKind::kBessel:
    case ProcessKind::kBessel3:
    case ProcessKind::kNegBessel3:
      append_bessel(out, extra.steps(), rng);
      break;
    case ProcessKind::kSpliced:
      break;
  }
  return out;
}

double bridge_hit_probability(double a, double b, double step, double level) noexcept {
  const double da = a - level;
  const double db = b - level;
  if (da * db <= 0.0) return 1.0;
  return std::exp(-2.0 * da * db / step);
}

double bridge_max_from_uniform(double a, double b, double step, double u) noexcept {
  const double d = b - a;
  return 0.5 * (a + b + std::sqrt(d * d - 2.0 * step * std::log(u)));
}

double bridge_min_from_uniform(double a, double b, double step, double u) noexcept {
  const double d = b - a;
  return 0.5 * (a + b - std::sqrt(d * d - 2.0 * step * std::log(u)));
}

// P(L > l | a, b) = exp(-((|a| + |b| + l)^2 - (a - b)^2) / (2 step)).
double bridge_local_time_from_uniform(double a, double b, double step, double u) noexcept {
  const double d = a - b;
  const double l = std::sqrt(d * d - 2.0 * step * std::log(u)) - std::abs(a) - std::abs(b);
  return std::max(0.0, l);
}

double sample_noncentral_chi2(double df, double lambda, Rng& rng) {
  const double rounded = std::round(df);
  if (rounded == df && df >= 1.0 && df <= 8.0) {
    const double shifted = std::sqrt(lambda) + rng.normal();
    double sum = shifted * shifted;
    for (int k = 1; k < static_cast<int>(rounded); ++k) {
      const double z = rng.normal();
      sum += z * z;
    }
    return sum;
  }
  const auto n = rng.poisson(0.5 * lambda);
  return 2.0 * rng.gamma(0.5 * df + static_cast<double>(n));
}

double besq_step(double y2, double delta, double step, Rng& rng) {
  return step * sample_noncentral_chi2(delta, y2 / step, rng);
}

}  // namespace sigmaq

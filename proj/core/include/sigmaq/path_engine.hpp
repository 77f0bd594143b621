#pragma once

#include <cstdint>
#include <vector>

#include "sigmaq/rng.hpp"
#include "sigmaq/time_grid.hpp"

namespace sigmaq {

enum class ProcessKind {
  kBrownianMotion,
  kExpMartingale,
  kBessel,
  kBessel3,
  kNegBessel3,
  kSpliced,
};

/// Tagged description of a simulatable law.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::kBrownianMotion;
  double x0 = 0.0;
  double delta = 0.0;  // Bessel dimension; 3 for kBessel3 / kNegBessel3

  static ProcessSpec brownian(double x0 = 0.0) { return {ProcessKind::kBrownianMotion, x0, 0.0}; }
  static ProcessSpec exp_martingale(double x0) { return {ProcessKind::kExpMartingale, x0, 0.0}; }
  static ProcessSpec bessel(double delta, double x0 = 0.0);
  static ProcessSpec bessel3(double x0 = 0.0) { return {ProcessKind::kBessel3, x0, 3.0}; }
  static ProcessSpec neg_bessel3() { return {ProcessKind::kNegBessel3, 0.0, 3.0}; }
  static ProcessSpec spliced() { return {ProcessKind::kSpliced, 0.0, 0.0}; }

  /// Throws ConfigError when the parameters violate the law's constraints.
  void validate() const;
  bool is_brownian() const noexcept {
    return kind == ProcessKind::kBrownianMotion || kind == ProcessKind::kExpMartingale;
  }
};

/// One trajectory on a grid. Brownian kinds carry per-interval extrema drawn
/// from the exact bridge laws given the endpoints. Signed Brownian paths built
/// by simulate_bm_local_time additionally carry the local time at zero
/// accumulated in each interval.
struct PathSample {
  TimeGrid grid{1.0, 1};
  ProcessSpec spec;
  std::vector<double> values;
  std::vector<double> interval_max;
  std::vector<double> interval_min;
  std::vector<double> interval_local_time;
  std::uint64_t seed_id = 0;

  bool has_extrema() const noexcept { return !interval_max.empty(); }
  bool has_local_time() const noexcept { return !interval_local_time.empty(); }
};

PathSample simulate_bm(std::uint64_t seed, const TimeGrid& grid, double x0 = 0.0);

/// Brownian motion whose intervals also carry the exact conditional local time
/// at zero. Intervals that may both touch zero and exceed the running maximum
/// are refined by Brownian-bridge bisection before the leaf draws.
PathSample simulate_bm_local_time(std::uint64_t seed, const TimeGrid& grid, double x0 = 0.0);

/// M_t = x0 exp(B_t - t/2) driven by the Brownian path of the same seed.
PathSample simulate_exp_martingale(std::uint64_t seed, const TimeGrid& grid, double x0);

/// Exact squared-Bessel transitions; delta in (0, 2) or delta = 3.
PathSample simulate_bessel(std::uint64_t seed, const TimeGrid& grid, double delta,
                           double x0 = 0.0);

PathSample simulate(std::uint64_t seed, const TimeGrid& grid, const ProcessSpec& spec);

/// Continues `sample` for `extra_horizon` with the same transition law. The
/// prefix on the original grid is copied bitwise.
PathSample extend_path(const PathSample& sample, double extra_horizon, std::uint64_t seed);

/// Probability that a Brownian bridge from a to b over `step` touches `level`.
double bridge_hit_probability(double a, double b, double step, double level) noexcept;

/// Inverse-CDF draws for bridge extrema and bridge local time at zero, given a
/// uniform u in (0, 1).
double bridge_max_from_uniform(double a, double b, double step, double u) noexcept;
double bridge_min_from_uniform(double a, double b, double step, double u) noexcept;
double bridge_local_time_from_uniform(double a, double b, double step, double u) noexcept;

/// Noncentral chi-square with `df` degrees of freedom and noncentrality
/// `lambda`. Integer df uses shifted Gaussians; otherwise a Poisson(lambda/2)
/// mixture of central chi-square (gamma) draws.
double sample_noncentral_chi2(double df, double lambda, Rng& rng);

/// One exact squared-Bessel transition from y2 over `step`.
double besq_step(double y2, double delta, double step, Rng& rng);

}  // namespace sigmaq

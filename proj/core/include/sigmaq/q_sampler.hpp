#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "sigmaq/estimator.hpp"
#include "sigmaq/path_engine.hpp"
#include "sigmaq/rng.hpp"
#include "sigmaq/sigma_functionals.hpp"
#include "sigmaq/test_function.hpp"

namespace sigmaq {

/// Which measure a weighted sample is drawn under.
struct MeasureTag {
  enum class Kind { kQAbsBm, kW, kWPlus, kWMinus, kQBessel, kSAzema, kClassD, kBsKp };

  Kind kind = Kind::kQAbsBm;
  double param = 0.0;  // d for kQBessel, alpha for kSAzema, K for kBsKp

  static MeasureTag q_abs_bm() { return {Kind::kQAbsBm, 0.0}; }
  static MeasureTag w() { return {Kind::kW, 0.0}; }
  static MeasureTag w_plus() { return {Kind::kWPlus, 0.0}; }
  static MeasureTag w_minus() { return {Kind::kWMinus, 0.0}; }
  static MeasureTag q_bessel(double d);
  static MeasureTag s_azema(double alpha);
  static MeasureTag class_d() { return {Kind::kClassD, 0.0}; }
  static MeasureTag bs_kp(double strike) { return {Kind::kBsKp, strike}; }

  /// True for the measures realized by splicing at an inverse local time.
  bool is_spliced() const noexcept;
  std::string describe() const;
};

/// Importance density for the splice level.
class LevelProposal {
 public:
  enum class Kind { kExponential, kUniform };

  static LevelProposal exponential(double rate);
  static LevelProposal uniform(double upper);
  /// Exponential(1) for unbounded support, Uniform(0, u) when h has support
  /// [0, u].
  static LevelProposal default_for(const TestFunction& h);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  double sample(Rng& rng) const;
  double density(double level) const noexcept;
  /// True when the density is positive wherever h is.
  bool covers(const TestFunction& h) const noexcept;
  std::string describe() const;

 private:
  LevelProposal(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

struct SamplerOptions {
  /// Zero threshold (Y-units) for Bessel bases; 0 selects 3.5 sqrt(step).
  double bessel_eps = 0.0;
  /// W draws: alternate signs by sample index instead of a coin flip.
  bool stratified_w = false;
  /// Largest horizon the full sampler may extend to before giving up.
  double extension_budget = 256.0;
  unsigned threads = 0;

  double eps_for(double step) const;
};

/// One draw under a sigma-finite measure. Levels are in the units of the
/// increasing process of the base construction (local time for |B|, W and
/// Bessel bases, half local time for W^+ and W^-).
struct WeightedSample {
  MeasureTag tag;
  double level = 0.0;
  double weight = 1.0;
  /// Grid index of the splice; nullopt when the inverse local time lies
  /// beyond the sampled window.
  std::optional<std::size_t> splice_index;
  /// Spliced (X, A) with zero marks; for W kinds signed_values holds Y.
  ClassSigmaPath sigma;
  /// Spliced path in state coordinates (Y for W kinds, X otherwise). For W
  /// kinds the pre-splice intervals carry the Brownian bridge maxima; after
  /// the splice they hold the larger endpoint.
  PathSample path;
  /// +1 or -1 for the W family, 0 otherwise.
  int sign = 0;

  bool spliced() const noexcept { return splice_index.has_value(); }
  double splice_time() const;
};

/// Q_l restricted to the window `grid`: the base path on [0, horizon],
/// spliced at tau_l when tau_l <= horizon. Exact in law for functionals of
/// the path up to the horizon. `forced_sign` (+1/-1) fixes the W branch.
WeightedSample sample_q_window(const MeasureTag& tag, double level, std::uint64_t seed,
                               const TimeGrid& grid, const SamplerOptions& opts = {},
                               int forced_sign = 0);

/// Q_l on [0, tau_l + post_horizon]: the base path is extended until tau_l
/// resolves. Throws BudgetExhausted past opts.extension_budget.
WeightedSample sample_q_spliced(const MeasureTag& tag, double level, std::uint64_t seed,
                                const TimeGrid& grid, double post_horizon,
                                const SamplerOptions& opts = {}, int forced_sign = 0);

/// Sample under S_l for the age process (t - g(t))^alpha.
WeightedSample sample_azema_image(double alpha, double level, std::uint64_t seed,
                                  const TimeGrid& grid, double post_horizon,
                                  const SamplerOptions& opts = {});

/// Total weight a tag attaches to a unit of level (before proposal weights).
double measure_weight(const MeasureTag& tag);

/// Integrand H for q_integral. A constant H never touches a path.
struct QIntegrand {
  std::function<double(const WeightedSample&)> fn;
  std::optional<double> constant;

  static QIntegrand of(std::function<double(const WeightedSample&)> f) { return {std::move(f), {}}; }
  static QIntegrand constant_value(double c) { return {nullptr, c}; }
};

/// Estimates Q[H h(A_inf)] = int h(l) E_{Q_l}[H] dl with levels drawn from
/// `proposal` and paths from the windowed sampler on `grid`.
EstimatorResult q_integral(const MeasureTag& tag, const QIntegrand& H, const TestFunction& h,
                           const LevelProposal& proposal, std::size_t n, std::uint64_t seed,
                           const TimeGrid& grid, const SamplerOptions& opts = {});

/// Q = X_inf P for the stopped |B_{. ^ horizon}| built by the Levy
/// construction on `grid`; returns the P-mean of x_inf(path) H(path).
EstimatorResult reweight_class_d(const std::function<double(const ClassSigmaPath&)>& x_inf,
                                 const std::function<double(const ClassSigmaPath&)>& H,
                                 std::size_t n, std::uint64_t seed, const TimeGrid& grid,
                                 unsigned threads = 0);

/// Q = K P for the exponential martingale started at x0.
EstimatorResult bs_measure_expectation(double strike,
                                       const std::function<double(const PathSample&)>& H,
                                       std::size_t n, std::uint64_t seed, const TimeGrid& grid,
                                       double x0 = 1.0, unsigned threads = 0);

}  // namespace sigmaq

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sigmaq/estimator.hpp"
#include "sigmaq/path_engine.hpp"

namespace sigmaq {

/// European put on M_t = x0 exp(B_t - t/2) with a finite simulation horizon.
struct PutSpec {
  double strike = 1.0;
  double maturity = 1.0;
  double x0 = 1.0;
  double t_max = 8.0;
  /// Upper bound on the grid step; the actual step divides maturity / 2.
  double max_step = 1.0 / 16.0;

  void validate() const;
  /// Grid with maturity and maturity / 2 on it, horizon >= t_max.
  TimeGrid grid() const;
  std::string describe() const;
};

/// Unit-volatility, zero-rate put: K Phi(-d2) - x0 Phi(-d1).
double bs_closed_form(double strike, double maturity, double x0);

/// Per-path estimate of P(g_K <= t | path): no bridge crossing of K on the
/// grid intervals after t_index, times the never-again factor
/// 1 - min(1, M_T / K) at the horizon.
double last_passage_path_estimate(const PathSample& mart, double strike, std::size_t t_index);

EstimatorResult mc_put_price(const PutSpec& spec, std::size_t n, std::uint64_t seed,
                             unsigned threads = 0);

/// Estimates P(g_K <= maturity).
EstimatorResult last_passage_cdf(const PutSpec& spec, std::size_t n, std::uint64_t seed,
                                 unsigned threads = 0);

/// P(g_K <= t) for several maturities on the same paths (grid of `spec`).
std::vector<EstimatorResult> last_passage_curve(const PutSpec& spec,
                                                const std::vector<double>& maturities,
                                                std::size_t n, std::uint64_t seed,
                                                unsigned threads = 0);

/// Paired reports: Monte Carlo put vs closed form, K P(g_K <= t) vs closed
/// form, Monte Carlo put vs K P(g_K <= t), and the conditional instance
/// E[(K - M_t)^+ F] vs K E[1{g_K <= t} F] with F = 1{M_{t/2} <= x0}.
std::vector<IdentityReport> price_report(const PutSpec& spec, std::size_t n, std::uint64_t seed,
                                         double z_crit = 4.0, unsigned threads = 0);

}  // namespace sigmaq

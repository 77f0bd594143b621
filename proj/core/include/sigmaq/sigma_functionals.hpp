#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigmaq/path_engine.hpp"
#include "sigmaq/test_function.hpp"
#include "sigmaq/time_grid.hpp"

namespace sigmaq {

/// One realization of a class-(Sigma) pair (X, A) on a grid.
///
/// Zeros are recorded explicitly in `zero_mark`: grid point i is marked when
/// x[i] <= zero_tol, or when the construction knows that X vanished inside
/// the interval (t_{i-1}, t_i] (the exact bridge channel of the Levy and
/// local-time constructions). All zero functionals read the marks, so a
/// sampler may clear them where the law says X cannot vanish.
struct ClassSigmaPath {
  TimeGrid grid{1.0, 1};
  std::vector<double> x;
  std::vector<double> a;
  std::vector<std::uint8_t> zero_mark;
  double zero_tol = 0.0;
  std::string model_tag;
  /// Underlying signed coordinate (e.g. the Brownian motion Y behind |Y|),
  /// empty when the construction has none.
  std::vector<double> signed_values;

  std::size_t size() const noexcept { return x.size(); }
};

/// x >= 0, a[0] = 0, a nondecreasing, and every increase of a happens on an
/// interval touching the zero set (min endpoint <= zero_tol or a marked right
/// endpoint).
bool is_class_sigma(const ClassSigmaPath& path);
bool carried_on_zeros(const ClassSigmaPath& path);

/// (S - W, S) for a Brownian W with bridge-refined running maximum S; equal in
/// law to (|B|, L) at grid times.
ClassSigmaPath build_abs_bm_levy(std::uint64_t seed, const TimeGrid& grid);

/// X = S - M, A = S - M_0 for a Brownian or exponential-martingale path; M
/// is kept as the signed coordinate.
ClassSigmaPath build_drawdown(const PathSample& mart);

/// X = M^+, A = half the local time, estimated by trapezoidal occupation of
/// [-eps, eps] divided by 2 eps.
ClassSigmaPath build_positive_part(const PathSample& mart, double eps);

enum class SignedFamily { kAbs, kPlus, kMinus };

/// X = |Y|, Y^+ or Y^- for a Brownian path carrying exact interval local
/// times; A = L for |Y| and L/2 for the one-sided parts.
ClassSigmaPath build_signed_bm(const PathSample& bm_with_local_time, SignedFamily family);

/// X = Y^{2 alpha} for a Bessel path of dimension 2(1 - alpha). A accumulates
/// the one-step conditional compensator E[X_{i+1} - X_i | Y_i] on intervals
/// with an endpoint within eps of zero.
ClassSigmaPath build_bessel_scale(const PathSample& bessel, double alpha, double eps);

/// X_t = (t - g(t))^alpha, A divided by 2^alpha Gamma(1 + alpha).
ClassSigmaPath azema_projection(const ClassSigmaPath& sigma, double alpha);

/// Largest marked grid index <= t_index.
std::optional<std::size_t> last_zero(const ClassSigmaPath& sigma, std::size_t t_index);
/// Smallest marked grid index > t_index.
std::optional<std::size_t> first_zero_after(const ClassSigmaPath& sigma, std::size_t t_index);
/// First grid index with a > level; nullopt means the path must be extended.
std::optional<std::size_t> inverse_local_time(const ClassSigmaPath& sigma, double level);

std::optional<double> last_zero_time(const ClassSigmaPath& sigma, double t);
std::optional<double> first_zero_after_time(const ClassSigmaPath& sigma, double t);

/// M^f_t = G(A_t) + f(A_t) X_t pointwise.
std::vector<double> mf_transform(const ClassSigmaPath& sigma, const TestFunction& f);
double mf_value(const ClassSigmaPath& sigma, const TestFunction& f, std::size_t index);

/// E[Y_{t+h}^{2 alpha} | Y_t = y] - y^{2 alpha} for a Bessel process of
/// dimension 2(1 - alpha); nonnegative.
double bessel_compensator_increment(double y, double alpha, double step);

}  // namespace sigmaq

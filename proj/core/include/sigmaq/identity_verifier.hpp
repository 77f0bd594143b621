#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigmaq/cylinder.hpp"
#include "sigmaq/estimator.hpp"
#include "sigmaq/q_sampler.hpp"
#include "sigmaq/stopping.hpp"
#include "sigmaq/test_function.hpp"

namespace sigmaq {

/// Class-(Sigma) model whose P-side paths and Q-side sampler are paired.
struct Model {
  enum class Kind { kAbsBm, kWPlus, kWMinus, kBessel, kDrawdown };

  Kind kind = Kind::kAbsBm;
  double d = 1.0;  // Bessel dimension

  static Model abs_bm() { return {Kind::kAbsBm, 1.0}; }
  static Model w_plus() { return {Kind::kWPlus, 1.0}; }
  static Model w_minus() { return {Kind::kWMinus, 1.0}; }
  static Model bessel(double d);
  static Model drawdown() { return {Kind::kDrawdown, 1.0}; }
  /// abs_bm, w_plus, w_minus, drawdown, bessel:<d>.
  static Model parse(const std::string& text);

  std::string describe() const;
  /// The measure Q of the model (W^- for the drawdown).
  MeasureTag q_tag() const;
};

struct VerifyConfig {
  std::uint64_t seed = 20240611;
  std::size_t n = 100000;
  double step = 1.0 / 1024.0;
  double horizon = 1.0;
  double z_crit = 4.0;
  /// Tail probability defining the A-truncation level R.
  double tail_prob = 1e-3;
  /// R beyond this makes the report INCONCLUSIVE.
  double max_level = 50.0;
  /// Allowance for the level truncation of the drawdown sampler.
  double level_tail = 1e-6;
  /// Discretization allowance for thresholded Bessel zero sets.
  double bessel_bias = 0.02;
  std::optional<LevelProposal> proposal;
  SamplerOptions sampler;
  /// Mutation switch: drop 1{g <= t} on the Q side.
  bool drop_indicator = false;
  unsigned threads = 0;

  TimeGrid grid() const { return TimeGrid::make(step, horizon); }
};

/// P-side path of a model on `grid`.
ClassSigmaPath build_model_path(const Model& model, std::uint64_t seed, const TimeGrid& grid,
                                const SamplerOptions& opts = {});

/// Q[F_t 1{g <= t}] vs E_P[F_t X_t].
IdentityReport verify_master(const Model& model, const CylinderFunctional& F, double t,
                             const VerifyConfig& cfg);
/// Q[F_T 1{g <= T}] vs E_P[F_T X_T] for a bounded stopping rule.
IdentityReport verify_stopping(const Model& model, const CylinderFunctional& F,
                               const StoppingRule& T, const VerifyConfig& cfg);
/// E_P[F_T X_T] vs E_P[F_T X_inf 1{g <= T}] for X = |B_{. ^ horizon}|.
IdentityReport verify_class_d(const CylinderFunctional& F, const StoppingRule& T,
                              const VerifyConfig& cfg);
/// (W^+ - W^-)[F_T 1{g <= T}] vs E_P[F_T B_T].
IdentityReport verify_doob(const CylinderFunctional& F, const StoppingRule& T,
                           const VerifyConfig& cfg);
/// Q[F_t f(A_inf)] vs E_P[F_t (G(A_t) + f(A_t) X_t)].
IdentityReport verify_nf_density(const Model& model, const TestFunction& f,
                                 const CylinderFunctional& F, double t, const VerifyConfig& cfg);

enum class AinfModel { kAbsBm, kClassD };
/// Q[f(A_inf)] vs f(0) E[X_0] + int f(u) P[A_inf > u] du.
IdentityReport verify_ainf_image(AinfModel model, const TestFunction& f, const VerifyConfig& cfg);
/// int_0^inf f(u) P[L_t > u] du with L_t ~ |N(0, t)|, in closed form.
double class_d_ainf_closed_form(const TestFunction& f, double t);

/// E_P[M^f_T] vs G(0) + f(0) E[X_0] for every rule, on the same paths.
std::vector<IdentityReport> verify_martingale_constancy(const Model& model, const TestFunction& f,
                                                        const std::vector<StoppingRule>& rules,
                                                        const VerifyConfig& cfg);
/// Q_BESSEL(2(1-alpha))[F_t 1{g <= t}] vs 2^alpha Gamma(1+alpha) E_P[F_t (t - g(t))^alpha].
IdentityReport verify_azema(double alpha, const CylinderFunctional& F, double t,
                            const VerifyConfig& cfg);
/// Least-squares slope of |B_t| on sqrt(t - g(t)) vs sqrt(pi / 2).
IdentityReport azema_slope(const VerifyConfig& cfg);

/// Identity ids accepted by run_identity, in suite order.
const std::vector<std::string>& registered_identities();
const std::vector<std::string>& azema_identities();
bool is_registered_identity(const std::string& id);
/// Runs one registered identity. `model` selects the model of "master".
std::vector<IdentityReport> run_identity(const std::string& id, const VerifyConfig& cfg,
                                         const Model& model = Model::abs_bm());

}  // namespace sigmaq

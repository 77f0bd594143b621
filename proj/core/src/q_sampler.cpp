#include "sigmaq/q_sampler.hpp"

#include <cmath>
#include <sstream>

#include "sigmaq/error.hpp"
#include "sigmaq/special.hpp"

namespace sigmaq {

namespace {

bool is_w_family(const MeasureTag& tag) {
  return tag.kind == MeasureTag::Kind::kW || tag.kind == MeasureTag::Kind::kWPlus ||
         tag.kind == MeasureTag::Kind::kWMinus;
}

// alpha of the base construction X = Y^{2 alpha}.
double base_alpha(const MeasureTag& tag) {
  switch (tag.kind) {
    case MeasureTag::Kind::kQBessel:
      return 1.0 - 0.5 * tag.param;
    case MeasureTag::Kind::kSAzema:
      return tag.param;
    default:
      return 0.5;
  }
}

bool uses_levy_base(const MeasureTag& tag) {
  return tag.kind == MeasureTag::Kind::kQAbsBm || (!is_w_family(tag) && base_alpha(tag) == 0.5);
}

struct Base {
  PathSample raw;
  ClassSigmaPath sigma;
};

void rebuild(const MeasureTag& tag, Base& base, const SamplerOptions& opts) {
  if (uses_levy_base(tag)) {
    base.sigma = build_drawdown(base.raw);
    base.sigma.model_tag = "abs_bm";
    base.sigma.signed_values.clear();
  } else if (is_w_family(tag)) {
    const SignedFamily family = tag.kind == MeasureTag::Kind::kW       ? SignedFamily::kAbs
                                : tag.kind == MeasureTag::Kind::kWPlus ? SignedFamily::kPlus
                                                                       : SignedFamily::kMinus;
    base.sigma = build_signed_bm(base.raw, family);
  } else {
    base.sigma = build_bessel_scale(base.raw, base_alpha(tag), opts.eps_for(base.raw.grid.step()));
  }
}

Base make_base(const MeasureTag& tag, std::uint64_t seed, const TimeGrid& grid,
               const SamplerOptions& opts) {
  Base base;
  if (uses_levy_base(tag)) {
    base.raw = simulate_bm(seed, grid, 0.0);
  } else if (is_w_family(tag)) {
    base.raw = simulate_bm_local_time(seed, grid, 0.0);
  } else {
    base.raw = simulate_bessel(seed, grid, 2.0 * (1.0 - base_alpha(tag)), 0.0);
  }
  rebuild(tag, base, opts);
  return base;
}

void check_spliced_tag(const MeasureTag& tag) {
  if (!tag.is_spliced()) {
    throw ConfigError("measure " + tag.describe() + " is not realized by splicing");
  }
  if (tag.kind == MeasureTag::Kind::kQBessel && !(tag.param > 0.0 && tag.param < 2.0)) {
    throw ConfigError("Q_BESSEL dimension must lie in (0, 2)");
  }
  if (tag.kind == MeasureTag::Kind::kSAzema && !(tag.param > 0.0 && tag.param < 1.0)) {
    throw ConfigError("S_AZEMA alpha must lie in (0, 1)");
  }
}

int choose_sign(const MeasureTag& tag, std::uint64_t seed, int forced_sign) {
  switch (tag.kind) {
    case MeasureTag::Kind::kWPlus:
      return 1;
    case MeasureTag::Kind::kWMinus:
      return -1;
    case MeasureTag::Kind::kW:
      if (forced_sign != 0) return forced_sign > 0 ? 1 : -1;
      return Rng(derive_seed(seed, 0, Stream::kSign)).coin() ? 1 : -1;
    default:
      return 0;
  }
}

WeightedSample assemble(const MeasureTag& tag, double level, const Base& base,
                        std::optional<std::size_t> tau, std::size_t total_steps,
                        std::uint64_t seed, int sign) {
  const double h = base.raw.grid.step();
  const std::size_t n = total_steps + 1;
  const std::size_t prefix = tau ? *tau : n;
  const double alpha = base_alpha(tag);
  const bool signed_coord = !base.sigma.signed_values.empty();

  WeightedSample out;
  out.tag = tag;
  out.level = level;
  out.weight = measure_weight(tag);
  out.splice_index = tau;
  out.sign = sign;

  ClassSigmaPath& s = out.sigma;
  s.grid = TimeGrid(h, total_steps);
  s.zero_tol = base.sigma.zero_tol;
  s.model_tag = base.sigma.model_tag;
  s.x.assign(base.sigma.x.begin(), base.sigma.x.begin() + static_cast<long>(prefix));
  s.a.assign(base.sigma.a.begin(), base.sigma.a.begin() + static_cast<long>(prefix));
  s.zero_mark.assign(base.sigma.zero_mark.begin(),
                     base.sigma.zero_mark.begin() + static_cast<long>(prefix));
  if (signed_coord) {
    s.signed_values.assign(base.sigma.signed_values.begin(),
                           base.sigma.signed_values.begin() + static_cast<long>(prefix));
  }

  if (tau) {
    s.model_tag += "_spliced";
    // After tau_l: the version of the base conditioned never to vanish,
    // Bessel(4 - d) from 0 with d = 2 (1 - alpha).
    const double post_delta = 4.0 - 2.0 * (1.0 - alpha);
    const double post_sign = is_w_family(tag) ? static_cast<double>(sign) : 1.0;
    Rng rng(derive_seed(seed, 0, Stream::kSplice));
    s.x.reserve(n);
    s.a.resize(n, level);
    s.zero_mark.resize(n, 0);
    s.zero_mark[*tau] = 1;
    s.x.push_back(0.0);
    if (signed_coord) s.signed_values.push_back(0.0);
    double y2 = 0.0;
    for (std::size_t j = *tau + 1; j < n; ++j) {
      y2 = besq_step(y2, post_delta, h, rng);
      const double y = std::sqrt(y2);
      s.x.push_back(alpha == 0.5 ? y : std::pow(y, 2.0 * alpha));
      if (signed_coord) s.signed_values.push_back(post_sign * y);
    }
  }

  PathSample& p = out.path;
  p.grid = s.grid;
  p.spec = ProcessSpec::spliced();
  p.seed_id = seed;
  p.values = is_w_family(tag) ? s.signed_values : s.x;
  if (is_w_family(tag)) {
    p.interval_max.resize(total_steps);
    for (std::size_t i = 0; i < total_steps; ++i) {
      p.interval_max[i] = i + 1 < prefix ? base.raw.interval_max[i]
                                         : std::max(p.values[i], p.values[i + 1]);
    }
  }

  if (tag.kind == MeasureTag::Kind::kSAzema) s = azema_projection(s, alpha);
  return out;
}

}  // namespace

MeasureTag MeasureTag::q_bessel(double d) { return {Kind::kQBessel, d}; }
MeasureTag MeasureTag::s_azema(double alpha) { return {Kind::kSAzema, alpha}; }

bool MeasureTag::is_spliced() const noexcept {
  return kind != Kind::kClassD && kind != Kind::kBsKp;
}

std::string MeasureTag::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kQAbsBm:
      os << "Q_ABS_BM";
      break;
    case Kind::kW:
      os << "W";
      break;
    case Kind::kWPlus:
      os << "W_PLUS";
      break;
    case Kind::kWMinus:
      os << "W_MINUS";
      break;
    case Kind::kQBessel:
      os << "Q_BESSEL(" << param << ")";
      break;
    case Kind::kSAzema:
      os << "S_AZEMA(" << param << ")";
      break;
    case Kind::kClassD:
      os << "CLASS_D";
      break;
    case Kind::kBsKp:
      os << "BS_KP(" << param << ")";
      break;
  }
  return os.str();
}

LevelProposal LevelProposal::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ConfigError("proposal rate must be > 0");
  return {Kind::kExponential, rate};
}

LevelProposal LevelProposal::uniform(double upper) {
  if (!(upper > 0.0) || !std::isfinite(upper)) throw ConfigError("proposal upper must be > 0");
  return {Kind::kUniform, upper};
}

LevelProposal LevelProposal::default_for(const TestFunction& h) {
  if (h.kind() == TestFunction::Kind::kIndicator) return uniform(*h.support_end());
  return exponential(1.0);
}

double LevelProposal::sample(Rng& rng) const {
  const double u = rng.uniform();
  return kind_ == Kind::kExponential ? -std::log(u) / param_ : u * param_;
}

double LevelProposal::density(double level) const noexcept {
  if (level < 0.0) return 0.0;
  if (kind_ == Kind::kExponential) return param_ * std::exp(-param_ * level);
  return level <= param_ ? 1.0 / param_ : 0.0;
}

bool LevelProposal::covers(const TestFunction& h) const noexcept {
  if (kind_ == Kind::kExponential) return true;
  const auto end = h.support_end();
  return end && *end <= param_ * (1.0 + 1e-12);
}

std::string LevelProposal::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::kExponential) {
    os << "exp(" << param_ << ")";
  } else {
    os << "unif(0," << param_ << ")";
  }
  return os.str();
}

double SamplerOptions::eps_for(double step) const {
  return bessel_eps > 0.0 ? bessel_eps : 3.5 * std::sqrt(step);
}

double WeightedSample::splice_time() const {
  if (!splice_index) throw std::logic_error("sample was not spliced inside its window");
  return sigma.grid.time(*splice_index);
}

double measure_weight(const MeasureTag& tag) {
  if (tag.kind == MeasureTag::Kind::kSAzema) return 1.0 / azema_constant(tag.param);
  return 1.0;
}

WeightedSample sample_q_window(const MeasureTag& tag, double level, std::uint64_t seed,
                               const TimeGrid& grid, const SamplerOptions& opts,
                               int forced_sign) {
  check_spliced_tag(tag);
  if (!(level > 0.0) || !std::isfinite(level)) throw ConfigError("splice level must be > 0");
  const Base base = make_base(tag, derive_seed(seed, 0, Stream::kPath), grid, opts);
  const auto tau = inverse_local_time(base.sigma, level);
  return assemble(tag, level, base, tau, grid.steps(), seed, choose_sign(tag, seed, forced_sign));
}

WeightedSample sample_q_spliced(const MeasureTag& tag, double level, std::uint64_t seed,
                                const TimeGrid& grid, double post_horizon,
                                const SamplerOptions& opts, int forced_sign) {
  check_spliced_tag(tag);
  if (!(level > 0.0) || !std::isfinite(level)) throw ConfigError("splice level must be > 0");
  const std::size_t post_steps = TimeGrid::make(grid.step(), post_horizon).steps();
  Base base = make_base(tag, derive_seed(seed, 0, Stream::kPath), grid, opts);
  auto tau = inverse_local_time(base.sigma, level);
  std::uint64_t round = 0;
  while (!tau) {
    const double horizon = base.raw.grid.horizon();
    if (2.0 * horizon > opts.extension_budget) {
      throw BudgetExhausted("inverse local time at level " + std::to_string(level) +
                            " not reached within horizon " + std::to_string(horizon));
    }
    base.raw = extend_path(base.raw, horizon, derive_seed(seed, round++, Stream::kExtension));
    rebuild(tag, base, opts);
    tau = inverse_local_time(base.sigma, level);
  }
  return assemble(tag, level, base, tau, *tau + post_steps, seed,
                  choose_sign(tag, seed, forced_sign));
}

WeightedSample sample_azema_image(double alpha, double level, std::uint64_t seed,
                                  const TimeGrid& grid, double post_horizon,
                                  const SamplerOptions& opts) {
  return sample_q_spliced(MeasureTag::s_azema(alpha), level, seed, grid, post_horizon, opts);
}

EstimatorResult q_integral(const MeasureTag& tag, const QIntegrand& H, const TestFunction& h,
                           const LevelProposal& proposal, std::size_t n, std::uint64_t seed,
                           const TimeGrid& grid, const SamplerOptions& opts) {
  check_spliced_tag(tag);
  if (!proposal.covers(h)) {
    throw ConfigError("level proposal " + proposal.describe() + " misses the support of " +
                      h.describe());
  }
  if (!H.constant && !H.fn) throw ConfigError("q_integral needs an integrand");
  const double tag_weight = measure_weight(tag);
  const auto values = evaluate_samples(n, opts.threads, [&](std::size_t i) {
    Rng level_rng(derive_seed(seed, i, Stream::kLevel));
    const double l = proposal.sample(level_rng);
    const double hl = h(l);
    if (hl == 0.0) return 0.0;
    const double w = hl / proposal.density(l);
    if (H.constant) return w * tag_weight * *H.constant;
    const int forced = opts.stratified_w ? (i % 2 == 0 ? 1 : -1) : 0;
    const WeightedSample sample =
        sample_q_window(tag, l, derive_seed(seed, i, Stream::kPath), grid, opts, forced);
    return w * sample.weight * H.fn(sample);
  });
  return summarize(values);
}

EstimatorResult reweight_class_d(const std::function<double(const ClassSigmaPath&)>& x_inf,
                                 const std::function<double(const ClassSigmaPath&)>& H,
                                 std::size_t n, std::uint64_t seed, const TimeGrid& grid,
                                 unsigned threads) {
  const auto values = evaluate_samples(n, threads, [&](std::size_t i) {
    const ClassSigmaPath path = build_abs_bm_levy(derive_seed(seed, i, Stream::kPath), grid);
    const double xi = x_inf(path);
    return xi == 0.0 ? 0.0 : xi * H(path);
  });
  return summarize(values);
}

EstimatorResult bs_measure_expectation(double strike,
                                       const std::function<double(const PathSample&)>& H,
                                       std::size_t n, std::uint64_t seed, const TimeGrid& grid,
                                       double x0, unsigned threads) {
  if (!(strike >= 0.0)) throw ConfigError("strike must be >= 0");
  if (strike == 0.0) return EstimatorResult::exact(0.0, n);
  const auto values = evaluate_samples(n, threads, [&](std::size_t i) {
    return strike * H(simulate_exp_martingale(derive_seed(seed, i, Stream::kPath), grid, x0));
  });
  return summarize(values);
}

}  // namespace sigmaq

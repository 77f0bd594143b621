#include "sigmaq/last_passage_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sigmaq/error.hpp"
#include "sigmaq/rng.hpp"
#include "sigmaq/special.hpp"

namespace sigmaq {

void PutSpec::validate() const {
  if (!(strike >= 0.0) || !std::isfinite(strike)) throw ConfigError("strike must be >= 0");
  if (!(maturity >= 0.0) || !std::isfinite(maturity)) throw ConfigError("maturity must be >= 0");
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw ConfigError("x0 must be > 0");
  if (!(t_max >= maturity) || !std::isfinite(t_max)) {
    throw ConfigError("simulation horizon t_max must be >= maturity");
  }
  if (!(max_step > 0.0)) throw ConfigError("max_step must be > 0");
}

TimeGrid PutSpec::grid() const {
  validate();
  double step = max_step;
  if (maturity > 0.0) {
    const double half_steps = std::ceil(0.5 * maturity / max_step - 1e-9);
    step = 0.5 * maturity / half_steps;
  }
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_max / step - 1e-9)));
  return TimeGrid(step, steps);
}

std::string PutSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "K=" << strike << ";t=" << maturity << ";x0=" << x0 << ";tmax=" << t_max;
  return os.str();
}

double bs_closed_form(double strike, double maturity, double x0) {
  if (!(strike > 0.0) || !(maturity > 0.0) || !(x0 > 0.0)) {
    throw ConfigError("closed-form put needs K, t, x0 > 0");
  }
  const double sd = std::sqrt(maturity);
  const double d1 = (std::log(x0 / strike) + 0.5 * maturity) / sd;
  const double d2 = d1 - sd;
  return strike * normal_cdf(-d2) - x0 * normal_cdf(-d1);
}

double last_passage_path_estimate(const PathSample& mart, double strike, std::size_t t_index) {
  if (strike <= 0.0) return 1.0;
  const double level = std::log(strike);
  const double h = mart.grid.step();
  const auto& v = mart.values;
  double survive = 1.0;
  double prev = std::log(v[t_index]);
  for (std::size_t i = t_index; i + 1 < v.size(); ++i) {
    const double next = std::log(v[i + 1]);
    survive *= 1.0 - bridge_hit_probability(prev, next, h, level);
    if (survive == 0.0) return 0.0;
    prev = next;
  }
  return survive * (1.0 - std::min(1.0, v.back() / strike));
}

EstimatorResult mc_put_price(const PutSpec& spec, std::size_t n, std::uint64_t seed,
                             unsigned threads) {
  spec.validate();
  if (spec.strike == 0.0) return EstimatorResult::exact(0.0, n);
  const TimeGrid full = spec.grid();
  const std::size_t t_index = full.index_of(spec.maturity);
  const TimeGrid grid(full.step(), std::max<std::size_t>(t_index, 1));
  const auto values = evaluate_samples(n, threads, [&](std::size_t i) {
    const PathSample m = simulate_exp_martingale(derive_seed(seed, i, Stream::kPath), grid, spec.x0);
    return std::max(spec.strike - m.values[t_index], 0.0);
  });
  return summarize(values);
}

std::vector<EstimatorResult> last_passage_curve(const PutSpec& spec,
                                                const std::vector<double>& maturities,
                                                std::size_t n, std::uint64_t seed,
                                                unsigned threads) {
  spec.validate();
  const TimeGrid grid = spec.grid();
  std::vector<std::size_t> idx;
  for (double t : maturities) {
    if (t > spec.t_max) throw ConfigError("maturity beyond t_max");
    idx.push_back(grid.index_of(t));
  }
  std::vector<std::vector<double>> values(idx.size(), std::vector<double>(n));
  parallel_for(n, threads, [&](std::size_t i) {
    const PathSample m = simulate_exp_martingale(derive_seed(seed, i, Stream::kPath), grid, spec.x0);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      values[k][i] = last_passage_path_estimate(m, spec.strike, idx[k]);
    }
  });
  std::vector<EstimatorResult> out;
  for (const auto& v : values) out.push_back(summarize(v));
  return out;
}

EstimatorResult last_passage_cdf(const PutSpec& spec, std::size_t n, std::uint64_t seed,
                                 unsigned threads) {
  return last_passage_curve(spec, {spec.maturity}, n, seed, threads).front();
}

std::vector<IdentityReport> price_report(const PutSpec& spec, std::size_t n, std::uint64_t seed,
                                         double z_crit, unsigned threads) {
  spec.validate();
  if (!(spec.strike > 0.0) || !(spec.maturity > 0.0)) {
    throw ConfigError("price report needs K > 0 and t > 0");
  }
  const TimeGrid grid = spec.grid();
  const std::size_t t_index = grid.index_of(spec.maturity);
  const std::size_t half_index = grid.index_of(0.5 * spec.maturity);
  const double K = spec.strike;
  std::vector<double> put(n), lp(n), put_f(n), lp_f(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const PathSample m = simulate_exp_martingale(derive_seed(seed, i, Stream::kPath), grid, spec.x0);
    const double f = m.values[half_index] <= spec.x0 ? 1.0 : 0.0;
    put[i] = std::max(K - m.values[t_index], 0.0);
    lp[i] = K * last_passage_path_estimate(m, K, t_index);
    put_f[i] = f * put[i];
    lp_f[i] = f * lp[i];
  });
  const auto exact = EstimatorResult::exact(bs_closed_form(K, spec.maturity, spec.x0), n);
  const EstimatorResult mc = summarize(put);
  const EstimatorResult last = summarize(lp);
  const std::string tag = "[" + spec.describe() + "]";
  std::vector<IdentityReport> out;
  out.push_back(make_report("put.mc_vs_closed" + tag, mc, exact, z_crit));
  out.push_back(make_report("put.lastpassage_vs_closed" + tag, last, exact, z_crit));
  out.push_back(make_report("put.mc_vs_lastpassage" + tag, mc, last, z_crit));
  out.push_back(make_report("put.conditional" + tag, summarize(put_f), summarize(lp_f), z_crit));
  for (auto& r : out) {
    r.seed = seed;
    r.n = n;
    r.step = grid.step();
    r.horizon = grid.horizon();
  }
  return out;
}

}  // namespace sigmaq

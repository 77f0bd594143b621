#include "sigmaq_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <string>

#include "sigmaq/error.hpp"
#include "sigmaq/identity_verifier.hpp"
#include "sigmaq/last_passage_pricing.hpp"
#include "sigmaq/path_engine.hpp"
#include "sigmaq/rng.hpp"
#include "sigmaq/sigma_functionals.hpp"
#include "sigmaq_cli/report_io.hpp"
#include "sigmaq_cli/run_config.hpp"

namespace sigmaq::cli {

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> identities;
  std::optional<std::string> model;
  std::optional<double> step;
  std::optional<double> horizon;
  std::optional<double> z_crit;
  unsigned threads = 0;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config, "Flat key = value config file");
  app->add_option("--seed", f.seed, "Master seed");
  app->add_option("--samples", f.samples, "Samples per estimator side");
  app->add_option("--out", f.out, "Output file (default: stdout)");
  app->add_option("--format", f.format, "Report format: csv or json");
  app->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

void add_suite_flags(CLI::App* app, CommonFlags& f) {
  app->add_option("--identities", f.identities, "Comma-separated identity ids");
  app->add_option("--model", f.model, "Model of the master identity");
  app->add_option("--step", f.step, "Grid step");
  app->add_option("--horizon", f.horizon, "Grid horizon");
  app->add_option("--z-crit", f.z_crit, "Critical |z|");
}

RunConfig resolve(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.samples) cfg.n = *f.samples;
  if (f.out) cfg.out = *f.out;
  if (f.format) apply_setting(cfg, "format", *f.format);
  if (f.identities) cfg.identities = split_list(*f.identities);
  if (f.model) cfg.model = *f.model;
  if (f.step) cfg.step = *f.step;
  if (f.horizon) cfg.horizon = *f.horizon;
  if (f.z_crit) cfg.z_crit = *f.z_crit;
  cfg.validate();
  return cfg;
}

// Runs `body` with the configured output stream.
template <typename Body>
void with_output(const RunConfig& cfg, std::ostream& out, Body&& body) {
  if (cfg.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("key 'out': cannot write '" + cfg.out + "'");
  body(file);
  file.flush();
  if (!file) throw ConfigError("key 'out': write to '" + cfg.out + "' failed");
}

int run_suite(const RunConfig& cfg, const std::vector<std::string>& default_ids, unsigned threads,
              std::ostream& out) {
  VerifyConfig vcfg = cfg.verify_config();
  vcfg.threads = threads;
  const Model model = Model::parse(cfg.model);
  const std::vector<std::string> ids = cfg.identities ? *cfg.identities : default_ids;
  std::vector<IdentityReport> reports;
  for (const auto& id : ids) {
    auto rs = run_identity(id, vcfg, model);
    reports.insert(reports.end(), rs.begin(), rs.end());
  }
  with_output(cfg, out, [&](std::ostream& os) { write_reports(os, reports, cfg.format); });
  return exit_code_for(reports);
}

void dump_path(std::ostream& os, const TimeGrid& grid, const std::vector<double>& values) {
  os << "time,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << format_number(grid.time(i)) << ',' << format_number(values[i]) << '\n';
  }
}

}  // namespace

int exit_code_for(const std::vector<IdentityReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::kFail) return kExitFail;
    if (r.verdict == Verdict::kInconclusive) inconclusive = true;
  }
  return inconclusive ? kExitInconclusive : kExitPass;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo verification of sigma-finite path measures"};
  app.require_subcommand(1);

  CommonFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Run identity suites");
  add_common(verify, verify_flags);
  add_suite_flags(verify, verify_flags);

  CommonFlags azema_flags;
  auto* azema = app.add_subcommand("azema", "Run the age-process suite");
  add_common(azema, azema_flags);
  add_suite_flags(azema, azema_flags);

  CommonFlags price_flags;
  PutSpec put;
  auto* price = app.add_subcommand("price", "Put price via last passage times");
  add_common(price, price_flags);
  price->add_option("--strike", put.strike, "Strike K");
  price->add_option("--maturity", put.maturity, "Maturity t");
  price->add_option("--x0", put.x0, "Initial value");
  price->add_option("--tmax", put.t_max, "Simulation horizon");
  price->add_option("--max-step", put.max_step, "Largest grid step");

  CommonFlags sim_flags;
  std::string sim_model = "bm";
  double sim_x0 = 0.0;
  std::uint64_t sim_index = 0;
  auto* simulate = app.add_subcommand("simulate", "Dump one path as time,value CSV");
  add_common(simulate, sim_flags);
  simulate->add_option("--process", sim_model,
                       "bm, exp_martingale, bessel:<d>, abs_bm or drawdown");
  simulate->add_option("--x0", sim_x0, "Initial value");
  simulate->add_option("--index", sim_index, "Sample index under the master seed");
  simulate->add_option("--step", sim_flags.step, "Grid step");
  simulate->add_option("--horizon", sim_flags.horizon, "Grid horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (verify->parsed()) {
      const RunConfig cfg = resolve(verify_flags);
      return run_suite(cfg, registered_identities(), verify_flags.threads, out);
    }
    if (azema->parsed()) {
      const RunConfig cfg = resolve(azema_flags);
      return run_suite(cfg, azema_identities(), azema_flags.threads, out);
    }
    if (price->parsed()) {
      const RunConfig cfg = resolve(price_flags);
      const auto reports = price_report(put, cfg.n, cfg.seed, cfg.z_crit, price_flags.threads);
      with_output(cfg, out, [&](std::ostream& os) { write_reports(os, reports, cfg.format); });
      return exit_code_for(reports);
    }
    if (simulate->parsed()) {
      const RunConfig cfg = resolve(sim_flags);
      const TimeGrid grid = TimeGrid::make(cfg.step, cfg.horizon);
      const std::uint64_t seed = derive_seed(cfg.seed, sim_index, Stream::kPath);
      std::vector<double> values;
      if (sim_model == "bm") {
        values = simulate_bm(seed, grid, sim_x0).values;
      } else if (sim_model == "exp_martingale") {
        values = simulate_exp_martingale(seed, grid, sim_x0 > 0.0 ? sim_x0 : 1.0).values;
      } else if (sim_model.rfind("bessel:", 0) == 0) {
        const double d = Model::parse(sim_model).d;
        values = simulate_bessel(seed, grid, d, sim_x0).values;
      } else if (sim_model == "abs_bm") {
        values = build_abs_bm_levy(seed, grid).x;
      } else if (sim_model == "drawdown") {
        values = build_drawdown(simulate_bm(seed, grid, sim_x0)).x;
      } else {
        throw ConfigError("unknown process '" + sim_model + "'");
      }
      with_output(cfg, out, [&](std::ostream& os) { dump_path(os, grid, values); });
      return kExitPass;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitConfig;
}

}  // namespace sigmaq::cli

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigmaq/identity_verifier.hpp"
#include "sigmaq_cli/report_io.hpp"

namespace sigmaq::cli {

/// Flat key = value run configuration. Keys: seed, n, step, horizon, model,
/// identities, z_crit, out, format. '#' starts a comment.
struct RunConfig {
  std::uint64_t seed = 20240611;
  std::size_t n = 100000;
  double step = 1.0 / 1024.0;
  double horizon = 1.0;
  std::string model = "abs_bm";
  /// Absent means the full suite of the subcommand.
  std::optional<std::vector<std::string>> identities;
  double z_crit = 4.0;
  std::string out;
  ReportFormat format = ReportFormat::kCsv;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  VerifyConfig verify_config() const;
};

/// Parses config text; errors name the key and line.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Applies one key = value pair.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

std::vector<std::string> split_list(const std::string& text);

}  // namespace sigmaq::cli

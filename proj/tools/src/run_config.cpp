#include "sigmaq_cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sigmaq/error.hpp"

namespace sigmaq::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  return out;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    if (!v.empty() && v[0] != '-') out = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError("key '" + key + "': not a nonnegative integer: '" + v + "'");
  }
  return out;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "seed") {
    cfg.seed = to_unsigned(key, value);
  } else if (key == "n") {
    cfg.n = static_cast<std::size_t>(to_unsigned(key, value));
  } else if (key == "step") {
    cfg.step = to_double(key, value);
  } else if (key == "horizon") {
    cfg.horizon = to_double(key, value);
  } else if (key == "model") {
    cfg.model = value;
  } else if (key == "identities") {
    cfg.identities = split_list(value);
  } else if (key == "z_crit") {
    cfg.z_crit = to_double(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    try {
      cfg.format = parse_format(value);
    } catch (const ConfigError& e) {
      throw ConfigError("key 'format': " + std::string(e.what()));
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value, got '" + line +
                        "'");
    }
    const std::string key = trim(line.substr(0, eq));
    try {
      apply_setting(base, key, trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void RunConfig::validate() const {
  if (n < 2) throw ConfigError("key 'n': need at least 2 samples");
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("key 'step': must be > 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("key 'horizon': must be > 0");
  if (!(z_crit > 0.0) || !std::isfinite(z_crit)) throw ConfigError("key 'z_crit': must be > 0");
  try {
    TimeGrid::make(step, horizon);
  } catch (const ConfigError& e) {
    throw ConfigError("key 'horizon': " + std::string(e.what()));
  }
  try {
    Model::parse(model);
  } catch (const ConfigError& e) {
    throw ConfigError("key 'model': " + std::string(e.what()));
  }
  if (identities) {
    for (const auto& id : *identities) {
      if (!is_registered_identity(id)) {
        throw ConfigError("key 'identities': unknown identity id '" + id + "'");
      }
    }
  }
}

VerifyConfig RunConfig::verify_config() const {
  VerifyConfig v;
  v.seed = seed;
  v.n = n;
  v.step = step;
  v.horizon = horizon;
  v.z_crit = z_crit;
  return v;
}

}  // namespace sigmaq::cli

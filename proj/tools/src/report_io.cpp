#include "sigmaq_cli/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sigmaq/error.hpp"

namespace sigmaq::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return json_string(format_number(v));
  return format_number(v);
}

}  // namespace

ReportFormat parse_format(const std::string& text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  throw ConfigError("format must be csv or json, got '" + text + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header() {
  return "identity_id,lhs_mean,lhs_stderr,rhs_mean,rhs_stderr,z,bias_budget,n,seed,verdict";
}

std::string csv_row(const IdentityReport& r) {
  std::ostringstream os;
  os << csv_field(r.identity_id) << ',' << format_number(r.lhs.mean) << ','
     << format_number(r.lhs.std_error) << ',' << format_number(r.rhs.mean) << ','
     << format_number(r.rhs.std_error) << ',' << format_number(r.z) << ','
     << format_number(r.bias_budget()) << ',' << r.n << ',' << r.seed << ','
     << to_string(r.verdict);
  return os.str();
}

std::string json_line(const IdentityReport& r) {
  std::ostringstream os;
  os << "{\"identity_id\":" << json_string(r.identity_id)
     << ",\"lhs_mean\":" << json_number(r.lhs.mean)
     << ",\"lhs_stderr\":" << json_number(r.lhs.std_error)
     << ",\"rhs_mean\":" << json_number(r.rhs.mean)
     << ",\"rhs_stderr\":" << json_number(r.rhs.std_error) << ",\"z\":" << json_number(r.z)
     << ",\"bias_budget\":" << json_number(r.bias_budget()) << ",\"n\":" << r.n
     << ",\"seed\":" << r.seed << ",\"verdict\":" << json_string(to_string(r.verdict)) << "}";
  return os.str();
}

void write_reports(std::ostream& os, const std::vector<IdentityReport>& reports,
                   ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    os << csv_header() << '\n';
    for (const auto& r : reports) os << csv_row(r) << '\n';
  } else {
    for (const auto& r : reports) os << json_line(r) << '\n';
  }
}

}  // namespace sigmaq::cli

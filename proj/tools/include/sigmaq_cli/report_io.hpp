#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sigmaq/estimator.hpp"

namespace sigmaq::cli {

enum class ReportFormat { kCsv, kJson };

ReportFormat parse_format(const std::string& text);

/// %.17g, with inf / -inf / nan spelled out.
std::string format_number(double v);

std::string csv_header();
std::string csv_row(const IdentityReport& r);
/// One JSON object; non-finite numbers are written as strings.
std::string json_line(const IdentityReport& r);

void write_reports(std::ostream& os, const std::vector<IdentityReport>& reports,
                   ReportFormat format);

}  // namespace sigmaq::cli

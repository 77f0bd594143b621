#include "sigmaq/special.hpp"

#include <cmath>

#include "sigmaq/error.hpp"

namespace sigmaq {

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double azema_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  return std::pow(2.0, alpha) * std::tgamma(1.0 + alpha);
}

}  // namespace sigmaq

#include "sigmaq/time_grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sigmaq/error.hpp"

namespace sigmaq {

namespace {
// Grid ratios are compared with a tolerance of a few ulps of the ratio.
double ratio_tolerance(double ratio) {
  return 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(ratio));
}
}  // namespace

TimeGrid::TimeGrid(double step, std::size_t steps) : step_(step), steps_(steps) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError("time grid step must be positive and finite");
  }
}

TimeGrid TimeGrid::make(double step, double horizon) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError("time grid step must be positive and finite");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ConfigError("time grid horizon must be positive and finite");
  }
  const double ratio = horizon / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > ratio_tolerance(ratio) || rounded < 1.0) {
    throw ConfigError("horizon " + std::to_string(horizon) +
                      " is not an integer multiple of step " + std::to_string(step));
  }
  return TimeGrid(step, static_cast<std::size_t>(rounded));
}

bool TimeGrid::is_grid_time(double t) const noexcept {
  if (t < 0.0) return false;
  const double ratio = t / step_;
  const double rounded = std::round(ratio);
  return std::abs(ratio - rounded) <= ratio_tolerance(ratio) &&
         rounded <= static_cast<double>(steps_);
}

std::size_t TimeGrid::floor_index(double t) const {
  const double ratio = t / step_;
  const double rounded = std::round(ratio);
  const double idx =
      std::abs(ratio - rounded) <= ratio_tolerance(ratio) ? rounded : std::floor(ratio);
  if (!(idx >= 0.0) || idx > static_cast<double>(steps_)) {
    throw ConfigError("time " + std::to_string(t) + " lies outside the grid [0, " +
                      std::to_string(horizon()) + "]");
  }
  return static_cast<std::size_t>(idx);
}

std::size_t TimeGrid::index_of(double t) const {
  if (!is_grid_time(t)) {
    throw ConfigError("time " + std::to_string(t) + " is not a grid time");
  }
  return static_cast<std::size_t>(std::round(t / step_));
}

}  // namespace sigmaq

#pragma once

#include <cstddef>

namespace sigmaq {

/// Uniform grid 0 = t_0 < ... < t_n = horizon. Times are always computed as
/// step * index, never accumulated.
class TimeGrid {
 public:
  TimeGrid(double step, std::size_t steps);

  /// Throws ConfigError unless step > 0 and horizon is an integer multiple of
  /// step.
  static TimeGrid make(double step, double horizon);

  double step() const noexcept { return step_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_ + 1; }
  double horizon() const noexcept { return step_ * static_cast<double>(steps_); }
  double time(std::size_t i) const noexcept { return step_ * static_cast<double>(i); }

  /// Index of the largest grid time <= t (t within rounding of a grid time
  /// maps onto it). Throws ConfigError for t < 0 or t > horizon.
  std::size_t floor_index(double t) const;
  /// Index of t, which must be a grid time. Throws ConfigError otherwise.
  std::size_t index_of(double t) const;
  bool is_grid_time(double t) const noexcept;

  TimeGrid extended(std::size_t extra_steps) const noexcept {
    return TimeGrid(step_, steps_ + extra_steps);
  }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double step_;
  std::size_t steps_;
};

}  // namespace sigmaq

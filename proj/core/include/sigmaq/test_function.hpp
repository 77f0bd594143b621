#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sigmaq {

/// Nonnegative integrable f on [0, inf) with its tail integral
/// G(x) = int_x^inf f(y) dy available in closed form.
class TestFunction {
 public:
  enum class Kind { kExponential, kIndicator, kPiecewise };

  /// f(x) = rate * exp(-rate x); unit mass.
  static TestFunction exponential(double rate);
  /// f = 1 on [0, upper].
  static TestFunction indicator(double upper);
  /// f = levels[j] on [breakpoints[j], breakpoints[j+1]); breakpoints start
  /// at 0, levels are nonnegative, f = 0 past the last breakpoint.
  static TestFunction piecewise(std::vector<double> breakpoints, std::vector<double> levels);
  /// f = 0 (empty piecewise function).
  static TestFunction zero() { return piecewise({0.0}, {}); }

  Kind kind() const noexcept { return kind_; }
  double operator()(double x) const noexcept { return value(x); }
  double value(double x) const noexcept;
  /// G(x) = int_x^inf f(y) dy.
  double tail(double x) const noexcept;
  double mass() const noexcept { return tail(0.0); }
  /// End of the support, or nullopt when the support is unbounded.
  std::optional<double> support_end() const noexcept;
  double rate() const noexcept { return rate_; }
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  const std::vector<double>& levels() const noexcept { return levels_; }

  std::string describe() const;

 private:
  TestFunction() = default;

  Kind kind_ = Kind::kPiecewise;
  double rate_ = 0.0;
  std::vector<double> breaks_;
  std::vector<double> levels_;
};

}  // namespace sigmaq

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sigmaq/sigma_functionals.hpp"
#include "sigmaq/stopping.hpp"

namespace sigmaq {

/// Data a kernel may read at evaluation time t. Zero-filtration kernels
/// receive only `t` and `last_zero`.
struct CylinderInput {
  double t = 0.0;
  std::vector<double> values;       // coordinate at the evaluation times (stopped at t)
  double running_max = 0.0;         // of the coordinate on [0, t]
  std::optional<double> last_zero;  // g(t)
};

/// Bounded functional of the path up to time t.
class CylinderFunctional {
 public:
  enum class Filtration { kFull, kZeros };
  using Kernel = std::function<double(const CylinderInput&)>;

  CylinderFunctional(std::string name, std::vector<double> times, Kernel kernel, double bound,
                     Filtration filtration = Filtration::kFull,
                     Coordinate coord = Coordinate::kX);

  static CylinderFunctional constant(double c);
  static CylinderFunctional one() { return constant(1.0); }
  static CylinderFunctional zero() { return constant(0.0); }
  /// 1{|coordinate(s)| <= radius}.
  static CylinderFunctional abs_at_most(double s, double radius, Coordinate coord = Coordinate::kX);
  /// 1{coordinate(s) > 0}.
  static CylinderFunctional positive_at(double s, Coordinate coord = Coordinate::kSigned);
  /// 1{g(t) <= u}; reads only the zero set.
  static CylinderFunctional last_zero_at_most(double u);

  /// Evaluates at grid index `t_index`; evaluation times beyond t are read at
  /// t (the stopped path). Throws std::logic_error if the kernel leaves
  /// [-bound, bound].
  double evaluate(const ClassSigmaPath& path, std::size_t t_index) const;
  double evaluate_at(const ClassSigmaPath& path, double t) const;

  const std::string& name() const noexcept { return name_; }
  double bound() const noexcept { return bound_; }
  Filtration filtration() const noexcept { return filtration_; }
  Coordinate coordinate() const noexcept { return coord_; }
  const std::vector<double>& times() const noexcept { return times_; }
  /// Value of a path-independent functional.
  std::optional<double> constant_value() const noexcept { return constant_; }

 private:
  std::string name_;
  std::vector<double> times_;
  Kernel kernel_;
  double bound_ = 1.0;
  Filtration filtration_ = Filtration::kFull;
  Coordinate coord_ = Coordinate::kX;
  std::optional<double> constant_;
};

}  // namespace sigmaq

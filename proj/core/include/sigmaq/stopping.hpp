#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "sigmaq/path_engine.hpp"
#include "sigmaq/sigma_functionals.hpp"

namespace sigmaq {

/// Which coordinate of a ClassSigmaPath a rule or functional reads.
enum class Coordinate {
  kX,       // the submartingale X
  kSigned,  // the underlying signed process, when the construction has one
};

/// Bounded stopping rule. Hitting rules look only at the path up to the
/// current time, so {T <= t} is adapted by construction.
class StoppingRule {
 public:
  enum class Kind { kDeterministic, kHittingLevel, kMinOf };

  static StoppingRule deterministic(double t);
  /// First time the coordinate reaches `level`, capped at `cap`. The
  /// direction is upward when the path starts below the level and downward
  /// otherwise.
  static StoppingRule hitting(double level, double cap, Coordinate coord = Coordinate::kX);
  static StoppingRule min_of(const StoppingRule& a, const StoppingRule& b);

  Kind kind() const noexcept { return kind_; }
  /// Upper bound of the rule.
  double cap() const noexcept;
  /// Throws ConfigError when the rule can exceed the horizon of `grid`.
  void validate(const TimeGrid& grid) const;

  /// Grid index of T on a class-(Sigma) path (grid-level detection).
  std::size_t evaluate_index(const ClassSigmaPath& path) const;
  /// Grid index of T on a raw path; Brownian kinds use the bridge extrema, a
  /// hit inside an interval is reported at its right endpoint.
  std::size_t evaluate_index(const PathSample& path) const;

  double evaluate(const ClassSigmaPath& path) const;
  double evaluate(const PathSample& path) const;

  std::string describe() const;

 private:
  StoppingRule() = default;

  Kind kind_ = Kind::kDeterministic;
  double time_ = 0.0;
  double level_ = 0.0;
  Coordinate coord_ = Coordinate::kX;
  std::shared_ptr<const StoppingRule> left_;
  std::shared_ptr<const StoppingRule> right_;
};

}  // namespace sigmaq

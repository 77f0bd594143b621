#include "sigmaq/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sigmaq/error.hpp"

namespace sigmaq {

namespace {

const std::vector<double>& coordinate_values(const ClassSigmaPath& path, Coordinate coord) {
  if (coord == Coordinate::kX) return path.x;
  if (path.signed_values.empty()) {
    throw UnsupportedError("construction '" + path.model_tag + "' has no signed coordinate");
  }
  return path.signed_values;
}

std::size_t first_grid_hit(const std::vector<double>& v, double level, std::size_t cap_index) {
  const bool upward = v.front() < level;
  for (std::size_t i = 0; i <= cap_index; ++i) {
    if (upward ? v[i] >= level : v[i] <= level) return i;
  }
  return cap_index;
}

}  // namespace

StoppingRule StoppingRule::deterministic(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("stopping time must be >= 0");
  StoppingRule r;
  r.kind_ = Kind::kDeterministic;
  r.time_ = t;
  return r;
}

StoppingRule StoppingRule::hitting(double level, double cap, Coordinate coord) {
  if (!(cap >= 0.0) || !std::isfinite(cap)) throw ConfigError("hitting cap must be >= 0");
  StoppingRule r;
  r.kind_ = Kind::kHittingLevel;
  r.time_ = cap;
  r.level_ = level;
  r.coord_ = coord;
  return r;
}

StoppingRule StoppingRule::min_of(const StoppingRule& a, const StoppingRule& b) {
  StoppingRule r;
  r.kind_ = Kind::kMinOf;
  r.left_ = std::make_shared<const StoppingRule>(a);
  r.right_ = std::make_shared<const StoppingRule>(b);
  return r;
}

double StoppingRule::cap() const noexcept {
  if (kind_ == Kind::kMinOf) return std::min(left_->cap(), right_->cap());
  return time_;
}

void StoppingRule::validate(const TimeGrid& grid) const {
  if (kind_ == Kind::kMinOf) {
    left_->validate(grid);
    right_->validate(grid);
    return;
  }
  if (time_ > grid.horizon() * (1.0 + 1e-12)) {
    throw ConfigError("stopping rule " + describe() + " exceeds horizon " +
                      std::to_string(grid.horizon()));
  }
}

std::size_t StoppingRule::evaluate_index(const ClassSigmaPath& path) const {
  switch (kind_) {
    case Kind::kDeterministic:
      validate(path.grid);
      return path.grid.floor_index(time_);
    case Kind::kHittingLevel: {
      validate(path.grid);
      return first_grid_hit(coordinate_values(path, coord_), level_,
                            path.grid.floor_index(time_));
    }
    case Kind::kMinOf:
      return std::min(left_->evaluate_index(path), right_->evaluate_index(path));
  }
  return 0;
}

std::size_t StoppingRule::evaluate_index(const PathSample& path) const {
  switch (kind_) {
    case Kind::kDeterministic:
      validate(path.grid);
      return path.grid.floor_index(time_);
    case Kind::kHittingLevel: {
      validate(path.grid);
      const std::size_t cap_index = path.grid.floor_index(time_);
      const auto& v = path.values;
      const bool upward = v.front() < level_;
      if (!upward && v.front() <= level_) return 0;
      for (std::size_t i = 0; i < cap_index; ++i) {
        bool hit = upward ? v[i + 1] >= level_ : v[i + 1] <= level_;
        if (!hit && path.has_extrema()) {
          hit = upward ? path.interval_max[i] >= level_ : path.interval_min[i] <= level_;
        }
        if (hit) return i + 1;
      }
      return cap_index;
    }
    case Kind::kMinOf:
      return std::min(left_->evaluate_index(path), right_->evaluate_index(path));
  }
  return 0;
}

double StoppingRule::evaluate(const ClassSigmaPath& path) const {
  return path.grid.time(evaluate_index(path));
}

double StoppingRule::evaluate(const PathSample& path) const {
  return path.grid.time(evaluate_index(path));
}

std::string StoppingRule::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kDeterministic:
      os << time_;
      break;
    case Kind::kHittingLevel:
      os << "hit" << (coord_ == Coordinate::kSigned ? "_signed(" : "(") << level_ << ")^" << time_;
      break;
    case Kind::kMinOf:
      os << "min(" << left_->describe() << "," << right_->describe() << ")";
      break;
  }
  return os.str();
}

}  // namespace sigmaq

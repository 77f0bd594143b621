#include "sigmaq/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sigmaq/error.hpp"

namespace sigmaq {

CylinderFunctional::CylinderFunctional(std::string name, std::vector<double> times, Kernel kernel,
                                       double bound, Filtration filtration, Coordinate coord)
    : name_(std::move(name)),
      times_(std::move(times)),
      kernel_(std::move(kernel)),
      bound_(bound),
      filtration_(filtration),
      coord_(coord) {
  if (!(bound_ >= 0.0) || !std::isfinite(bound_)) throw ConfigError("functional bound must be >= 0");
  if (!std::is_sorted(times_.begin(), times_.end())) {
    throw ConfigError("evaluation times must be increasing");
  }
  if (filtration_ == Filtration::kZeros && !times_.empty()) {
    throw ConfigError("zero-filtration functionals cannot read path values");
  }
}

CylinderFunctional CylinderFunctional::constant(double c) {
  std::ostringstream os;
  os << "const(" << c << ")";
  CylinderFunctional f(os.str(), {}, [c](const CylinderInput&) { return c; }, std::abs(c),
                       Filtration::kZeros);
  f.constant_ = c;
  return f;
}

CylinderFunctional CylinderFunctional::abs_at_most(double s, double radius, Coordinate coord) {
  std::ostringstream os;
  os << "abs_le(" << s << "," << radius << ")";
  return CylinderFunctional(
      os.str(), {s},
      [radius](const CylinderInput& in) { return std::abs(in.values[0]) <= radius ? 1.0 : 0.0; },
      1.0, Filtration::kFull, coord);
}

CylinderFunctional CylinderFunctional::positive_at(double s, Coordinate coord) {
  std::ostringstream os;
  os << "pos(" << s << ")";
  return CylinderFunctional(
      os.str(), {s}, [](const CylinderInput& in) { return in.values[0] > 0.0 ? 1.0 : 0.0; }, 1.0,
      Filtration::kFull, coord);
}

CylinderFunctional CylinderFunctional::last_zero_at_most(double u) {
  std::ostringstream os;
  os << "g_le(" << u << ")";
  return CylinderFunctional(
      os.str(), {},
      [u](const CylinderInput& in) {
        return in.last_zero && *in.last_zero <= u + 1e-12 ? 1.0 : 0.0;
      },
      1.0, Filtration::kZeros);
}

double CylinderFunctional::evaluate(const ClassSigmaPath& path, std::size_t t_index) const {
  if (constant_) return *constant_;
  CylinderInput in;
  in.t = path.grid.time(t_index);
  const auto g = last_zero(path, t_index);
  if (g) in.last_zero = path.grid.time(*g);
  if (filtration_ == Filtration::kFull) {
    const std::vector<double>* v = &path.x;
    if (coord_ == Coordinate::kSigned) {
      if (path.signed_values.empty()) {
        throw UnsupportedError("functional " + name_ + " needs a signed coordinate, '" +
                               path.model_tag + "' has none");
      }
      v = &path.signed_values;
    }
    in.values.reserve(times_.size());
    for (double s : times_) {
      const std::size_t j =
          s >= path.grid.horizon() ? t_index : std::min(path.grid.floor_index(s), t_index);
      in.values.push_back((*v)[j]);
    }
    in.running_max = *std::max_element(v->begin(), v->begin() + static_cast<long>(t_index) + 1);
  }
  const double out = kernel_(in);
  if (!(std::abs(out) <= bound_ * (1.0 + 1e-12))) {
    throw std::logic_error("functional " + name_ + " exceeded its bound");
  }
  return out;
}

double CylinderFunctional::evaluate_at(const ClassSigmaPath& path, double t) const {
  return evaluate(path, path.grid.floor_index(t));
}

}  // namespace sigmaq

#pragma once

#include <cstdint>
#include <random>

namespace sigmaq {

/// Stream tags keep the sub-streams of one sample statistically separate.
enum class Stream : std::uint64_t {
  kPath = 1,
  kExtension = 2,
  kLevel = 3,
  kSplice = 4,
  kSign = 5,
  kPaired = 6,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-style seed derivation: the stream of sample `index` depends only on
/// (master, index, stream), never on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          Stream stream = Stream::kPath) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double normal();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Gamma variate with unit scale.
  double gamma(double shape);
  std::uint64_t poisson(double mean);
  bool coin();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace sigmaq

#include "sigmaq/rng.hpp"

namespace sigmaq {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          Stream stream) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ index);
  return splitmix64(h ^ (static_cast<std::uint64_t>(stream) << 56));
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() {
  // 53-bit mantissa, shifted by half an ulp so that 0 and 1 are excluded.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

std::uint64_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

bool Rng::coin() { return (engine_() >> 63) != 0; }

}  // namespace sigmaq

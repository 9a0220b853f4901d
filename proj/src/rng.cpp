#include "qmus/rng.hpp"

namespace qmus {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SeededRng SeededRng::stream(std::uint64_t seed, std::uint64_t index) {
  return SeededRng(mix64(seed) ^ mix64(index + kGamma));
}

std::uint64_t SeededRng::next() {
  state_ += kGamma;
  return mix64(state_);
}

double SeededRng::next_unit() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

SeededRng SeededRng::split() { return SeededRng(next()); }

}  // namespace qmus

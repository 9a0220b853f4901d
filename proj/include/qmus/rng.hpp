#pragma once

#include <cstdint>

namespace qmus {

// SplitMix64. Small enough to pass by value; every draw returns a new state so
// callers thread it explicitly. Output is identical on every platform.
class SeededRng {
 public:
  constexpr explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for sample `index` of a run seeded with `seed`.
  static SeededRng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();

  // Uniform on (0, 1] with 53 bits of resolution.
  double next_unit();

  // Child generator seeded from this one's next output.
  SeededRng split();

  std::uint64_t state() const noexcept { return state_; }

  friend bool operator==(const SeededRng&, const SeededRng&) = default;

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace qmus

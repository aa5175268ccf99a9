#pragma once

// Deterministic 64-bit generator (splitmix64) for fixture synthesis and
// property tests. Hand-rolled so that generated bytes are identical on
// every platform and toolchain; the standard distributions make no such
// promise. Modulo reduction is fine here: reproducibility matters,
// uniformity to the last ulp does not.

#include <cstdint>
#include <span>

namespace dersim {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint8_t next_byte() { return static_cast<std::uint8_t>(next()); }

  std::uint64_t bounded(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  void fill(std::span<std::uint8_t> out) {
    for (auto& b : out) b = next_byte();
  }

 private:
  std::uint64_t state_;
};

}  // namespace dersim

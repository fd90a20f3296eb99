#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sfsel {

// Deterministic random source used by every stochastic routine in the
// library. The engine is mt19937_64, whose output sequence is fixed by the
// standard; the distributions below are implemented explicitly because the
// std::*_distribution adaptors are implementation-defined and would break
// seed reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::uniform_index: n must be positive");
    const std::uint64_t rem = (std::uint64_t{0} - n) % n;  // 2^64 mod n
    std::uint64_t x = next_u64();
    if (rem != 0) {
      const std::uint64_t limit = std::uint64_t{0} - rem;  // 2^64 - rem
      while (x >= limit) x = next_u64();
    }
    return x % n;
  }

  // Standard normal via Box-Muller; the paired value is cached so draws
  // consume one uniform pair per two normals.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sfsel

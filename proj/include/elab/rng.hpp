#pragma once

#include <cmath>
#include <cstdint>

namespace elab {

// SplitMix64 keyed by (seed, index, stream). Each key yields an independent
// stream, so sampling is a pure function of the key and identical no matter
// how samples are scheduled across threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static std::uint64_t key(std::uint64_t seed, std::uint64_t index,
                           std::uint64_t stream = 0) {
    std::uint64_t k = mix(seed + 0x9E3779B97F4A7C15ull);
    k = mix(k ^ (index + 0xD1B54A32D192ED03ull));
    k = mix(k ^ (stream + 0x8CB92BA72F3D8DD7ull));
    return k;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    return mix(z);
  }

  // uniform in [0, 1)
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller; libm-only so streams are stable per build
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace elab

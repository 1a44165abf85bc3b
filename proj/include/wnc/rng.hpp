#pragma once

#include <cmath>
#include <cstdint>

namespace wnc {

namespace detail {

inline constexpr std::uint64_t kStreamMult = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kDrawMult = 0xbf58476d1ce4e5b9ULL;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace detail

// Counter-based generator: draw k of stream `index` under `seed` is a pure
// hash of (seed, index, k).  Results are therefore independent of how
// streams are distributed over workers.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index)
      : base_(detail::mix64(seed ^ (index * detail::kStreamMult))),
        counter_(0) {}

  std::uint64_t next_u64() {
    return detail::mix64(base_ ^ (++counter_ * detail::kDrawMult));
  }

  // Uniform in (0, 1].
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; draws are consumed in pairs.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 6.283185307179586 * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace wnc

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace vrsim {

// Deterministic random stream. All simulator draws go through this wrapper so
// results are reproducible across platforms; the standard distributions are
// implementation-defined, so the transforms live here instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {lo, ..., hi}, bias-free by masked rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Standard normal via Box-Muller (polar form rejected: plain form is
  // branch-free apart from the cached spare).
  double normal();

  // Circularly symmetric complex normal with unit total variance.
  std::complex<double> cnormal() {
    constexpr double half = 0.7071067811865476;  // 1/sqrt(2)
    double re = normal();
    double im = normal();
    return {re * half, im * half};
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives an independent stream seed from a root seed, a purpose label and up
// to two indices. Streams with different labels or indices never share draws,
// so adding draws in one subsystem cannot shift another.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::uint64_t a = 0, std::uint64_t b = 0);

inline Rng make_stream(std::uint64_t root, std::string_view label,
                       std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(derive_seed(root, label, a, b));
}

// Fisher-Yates with our own bounded draw; std::shuffle leaves the draw
// sequence unspecified.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace vrsim

#include "vrsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vrsim {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
  if (span == 1) return lo;
  std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(span - 1);
  std::uint64_t v;
  do {
    v = next_u64() & mask;
  } while (v >= span);
  return lo + static_cast<std::int64_t>(v);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u in (0, 1] so the log is finite.
  double u = 1.0 - uniform();
  double v = uniform();
  double r = std::sqrt(-2.0 * std::log(u));
  double theta = 2.0 * 3.14159265358979323846 * v;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

namespace {

// FNV-1a over the label, then splitmix64 finalization mixing in the indices.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = mix(root ^ fnv1a(label));
  h = mix(h ^ a);
  h = mix(h ^ b);
  return h;
}

}  // namespace vrsim

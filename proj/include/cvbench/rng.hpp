#pragma once
// Seed derivation and deterministic random streams. Every random decision in
// the library draws from a SplitMix64 stream whose seed is derived by hashing
// a parent seed with role tags, so results never depend on evaluation order
// or on the number of worker threads.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace cvbench {

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return detail::mix64(h + 0x9e3779b97f4a7c15ULL + v);
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::string_view s) {
  return hash_combine(h, detail::fnv1a(s));
}

// hash64(seed, part, part, ...) -> derived 64-bit seed. Parts are integers or
// strings (role tags, dataset names, indices).
template <typename... Parts>
constexpr std::uint64_t hash64(std::uint64_t seed, Parts... parts) {
  std::uint64_t h = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
  ((h = hash_combine(h, parts)), ...);
  return h;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return detail::mix64(z);
  }

  // Uniform in [0, 1), 53 bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Bounded draw via multiply-shift; identical on every platform.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Box-Muller; consumes two uniforms per variate.
  double next_gaussian() {
    double u1 = 0.0;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

template <typename T>
void fisher_yates(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace cvbench

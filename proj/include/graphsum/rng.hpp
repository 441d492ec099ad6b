#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace graphsum {

// splitmix64 step; used both as a generator seeder and to derive
// independent streams from (seed, index...) tuples.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed) { return splitmix64(seed); }

template <class... Rest>
uint64_t derive_seed(uint64_t seed, uint64_t first, Rest... rest) {
  return derive_seed(splitmix64(seed ^ (first + 0x632be59bd9b4e019ULL)), rest...);
}

// Deterministic RNG wrapper. std::uniform_int_distribution is
// implementation-defined, so sampling is done by explicit rejection to keep
// outputs identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(splitmix64(seed ^ 0x5bf0363546290f1dULL)) {}

  uint64_t raw() { return eng_(); }

  // Uniform in [0, n).
  uint64_t below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("Rng::range: bad bounds");
    return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    if (v.empty()) throw std::invalid_argument("Rng::pick: empty vector");
    return v[static_cast<size_t>(below(v.size()))];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace graphsum

// Seeding scheme and portable random draws. std::mt19937_64 is fully
// specified by the standard; the std:: distributions are not, so the
// distribution helpers here are hand-rolled to keep every run bit-identical
// across compilers.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace edgecache {

inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t hash_label(std::string_view label) {
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Sub-stream seed for (seed, label). Every consumer of randomness draws from
// its own labeled stream, so adding a consumer never perturbs the others.
inline uint64_t subseed(uint64_t seed, std::string_view label) {
  return mix64(seed ^ mix64(hash_label(label)));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // uniform double in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // unbiased integer in [0, n)
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const int bits = 64 - std::countl_zero(n - 1);
    const uint64_t mask = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
    for (;;) {
      const uint64_t v = engine_() & mask;
      if (v < n) return v;
    }
  }

  // Knuth's product-of-uniforms sampler; exact and fine for small means
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgecache

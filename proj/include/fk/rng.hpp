#ifndef FK_RNG_HPP
#define FK_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace fk {

// All randomness in the library flows from a single 64-bit seed. Independent
// substreams are derived by hashing a stream name into the seed, so modules
// can draw concurrently without coupling their sequences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t derive(std::uint64_t seed, std::string_view stream) {
    // FNV-1a over the stream name, then splitmix64 finalization.
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : stream) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 1099511628211ULL;
    }
    std::uint64_t z = seed ^ h;
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static Rng stream(std::uint64_t seed, std::string_view name) {
    return Rng(derive(seed, name));
  }

  // Uniform in [0,1). Avoids std::uniform_real_distribution, whose output is
  // implementation-defined; mt19937_64 itself is fully specified.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    // Rejection sampling keeps the mapping exact and portable.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fk

#endif

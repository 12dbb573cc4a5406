#ifndef TEAMUP_RNG_HPP
#define TEAMUP_RNG_HPP

#include <cstdint>

namespace teamup {

// SplitMix64 generator. Small and identical on every platform, which keeps
// seeded runs byte-reproducible (std::uniform_int_distribution is not
// portable across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, n).
  int UniformInt(int n) {
    return static_cast<int>(
        (static_cast<unsigned __int128>(Next()) * static_cast<std::uint64_t>(n)) >> 64);
  }

  // Uniform draw from [0, 1).
  double UniformDouble() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return UniformDouble() < p; }

 private:
  std::uint64_t state_;
};

// Derives an independent stream from a master seed and up to two indices.
inline std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  Rng r(a ^ (b * 0xd1342543de82ef95ull) ^ (c * 0xaf251af3b0f025b5ull));
  r.Next();
  return r.Next();
}

}  // namespace teamup

#endif  // TEAMUP_RNG_HPP

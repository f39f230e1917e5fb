#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace trialalloc {

// Monte-Carlo streams. Replicate i of a run with seed s draws from
// xoshiro256** whose four state words are the first four SplitMix64 outputs
// starting from state  mix64(s ^ mix64(i + 0x632BE59BD9B4E019)),
// where mix64 is the SplitMix64 output finaliser. Streams therefore depend
// only on (seed, replicate index), never on how replicates are partitioned.

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  return mix64(state);
}

class Xoshiro256ss {
 public:
  explicit constexpr Xoshiro256ss(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
  }

  /// Raw state, for reproducing published reference sequences.
  static constexpr Xoshiro256ss from_state(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                           std::uint64_t d) noexcept {
    Xoshiro256ss g(0);
    g.s_[0] = a;
    g.s_[1] = b;
    g.s_[2] = c;
    g.s_[3] = d;
    return g;
  }

  constexpr std::uint64_t operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0,1) with 53 random bits.
  constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4]{};
};

inline Xoshiro256ss replicate_stream(std::uint64_t seed, std::uint64_t replicate) noexcept {
  return Xoshiro256ss(mix64(seed ^ mix64(replicate + 0x632BE59BD9B4E019ULL)));
}

/// Box-Muller pairs; the second deviate of each pair is cached.
class NormalSampler {
 public:
  double operator()(Xoshiro256ss& gen) noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - gen.uniform();  // (0,1]
    const double u2 = gen.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Inverse-transform Poisson draw. Exact (search from 0) for mean < 100; for
/// larger means the search starts 10 sd below the mean, discarding < 1e-20
/// of lower-tail mass.
std::int64_t sample_poisson(Xoshiro256ss& gen, double mean);

/// Inverse-transform binomial draw with the same lower-tail rule applied to
/// n*min(pi, 1-pi).
std::int64_t sample_binomial(Xoshiro256ss& gen, std::int64_t n, double pi);

}  // namespace trialalloc

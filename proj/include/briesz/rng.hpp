#pragma once

#include <cstdint>
#include <random>

namespace briesz {

/// Seeded pseudo-random source for all randomized trials.
/// Engine: std::mt19937_64 seeded directly with the 64-bit seed.
/// uniform() maps the top 53 bits of each draw to [0,1), so the stream is
/// fully specified by the seed and independent of library distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace briesz

#pragma once

#include <cstdint>

namespace boxball {

/// splitmix64 step, used for seed derivation.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic xoshiro256** stream. Streams are derived from
/// (seed, replica, purpose) so ensembles are reproducible and
/// order-independent across parallel schedules.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t replica = 0, uint64_t purpose = 0) {
        uint64_t st = seed;
        splitmix64(st);
        st ^= 0x9e3779b97f4a7c15ull * (replica + 1);
        splitmix64(st);
        st ^= 0xd1b54a32d192ed03ull * (purpose + 1);
        for (auto& w : s_) w = splitmix64(st);
    }

    uint64_t next() {
        auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double strictly inside (0, 1).
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53; }

    /// Bernoulli(p).
    bool bernoulli(double p) { return uniform() < p; }

  private:
    uint64_t s_[4];
};

}  // namespace boxball

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "shapecode/model.hpp"

namespace shapecode {

// xoshiro256** with splitmix64 seeding. Streams are derived from
// (seed, stream_index) so fanned-out workers replay identically regardless
// of scheduling.
class Xoshiro256 {
  public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : state_) s = splitmix(x);
    }

    static Xoshiro256 derived(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t x = seed;
        std::uint64_t base = splitmix(x);
        return Xoshiro256(base ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1)));
    }

    std::uint64_t next() {
        std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, n), unbiased
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (-n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    std::uint8_t next_byte() { return static_cast<std::uint8_t>(next() >> 56); }

  private:
    static std::uint64_t splitmix(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

// Sampling helper: cumulative table over a pmf.
class PmfSampler {
  public:
    explicit PmfSampler(const Pmf& p) {
        cum_.reserve(static_cast<std::size_t>(p.size()));
        double s = 0.0;
        for (int i = 0; i < p.size(); i++) {
            s += p[i];
            cum_.push_back(s);
        }
        cum_.back() = 1.0;
    }

    int sample(Xoshiro256& rng) const {
        double u = rng.next_double();
        std::size_t lo = 0, hi = cum_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cum_[mid] <= u) lo = mid + 1;
            else hi = mid;
        }
        return static_cast<int>(lo);
    }

  private:
    std::vector<double> cum_;
};

} // namespace shapecode

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace tritile {

/// One splitmix64 step; also the seed-derivation primitive.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the index-th child stream: splitmix64 applied to seed + index * golden.
/// Trials and per-part generators take their seeds this way so parallel runs match serial ones.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t s = seed + index * 0x9E3779B97F4A7C15ULL;
    return splitmix64(s);
}

/// xoshiro256** with portable bounded sampling (std distributions differ across libraries).
class Rng {
public:
    explicit Rng(uint64_t seed = 0) {
        uint64_t s = seed;
        for (auto& x : s_) x = splitmix64(s);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, bound), bound > 0; rejection sampling.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = (~uint64_t{0}) - (~uint64_t{0}) % bound;
        uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }
    int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct elements of pool, in sampled order.
    template <class T>
    std::vector<T> sample(std::vector<T> pool, size_t k) {
        for (size_t i = 0; i < k && i < pool.size(); ++i) {
            size_t j = i + static_cast<size_t>(below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(std::min(k, pool.size()));
        return pool;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace tritile

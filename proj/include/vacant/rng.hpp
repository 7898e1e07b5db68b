#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vacant {

// SplitMix64 finalizer; the basis of the counter-based stream below.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based stream: output i is a pure function of (key, i), so streams
// can be split deterministically and replicas are scheduling-independent.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(mix64(seed) ^ (0x5851f42d4c957f2dull * (stream + 1)))), counter_(0) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }

    result_type operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    // Child stream derived from the key and a tag; independent of counter state.
    RngStream split(std::uint64_t tag) const {
        RngStream child(0);
        child.key_ = mix64(key_ ^ mix64(tag ^ 0xd1342543de82ef95ull));
        child.counter_ = 0;
        return child;
    }

    // Stateless uniform in [0,1) attached to (key, tag); used for monotone
    // couplings where the same tag must see the same uniform across runs.
    double uniform_at(std::uint64_t tag) const {
        return to_unit(mix64(key_ ^ mix64(tag)));
    }

    std::uint64_t key() const { return key_; }

    double uniform() { return to_unit((*this)()); }

    // Uniform integer in [0, n); Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("below(0)");
        __uint128_t m = static_cast<__uint128_t>((*this)()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<__uint128_t>((*this)()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    double exponential(double rate = 1.0) {
        if (!(rate > 0)) throw std::invalid_argument("exponential rate must be positive");
        return -std::log1p(-uniform()) / rate;
    }

    bool bernoulli(double p) { return uniform() < p; }

    int binomial(int trials, double p) {
        int k = 0;
        for (int i = 0; i < trials; ++i) k += bernoulli(p) ? 1 : 0;
        return k;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static double to_unit(std::uint64_t x) {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace vacant

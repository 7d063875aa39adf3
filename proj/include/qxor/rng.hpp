#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace qxor {

// Counter-based 64-bit generator.
//
// Word k of stream s under seed S is mix(key + (k + 1) * 0x9E3779B97F4A7C15)
// with key = mix(S ^ mix(s + 0xD1B54A32D192ED03)) and mix the SplitMix64
// finalizer (xor-shift 30/27/31 with multipliers 0xBF58476D1CE4E5B9 and
// 0x94D049BB133111EB). Word k is therefore addressable without generating
// words 0..k-1, and the output is fixed by (S, s, k) alone.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0xD1B54A32D192ED03ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return at(counter_++); }

    // Word k of this stream; does not advance the counter.
    result_type at(std::uint64_t k) const { return mix(key_ + (k + 1) * 0x9E3779B97F4A7C15ULL); }

    std::uint64_t position() const { return counter_; }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    // Uniform on the open interval (0, 1).
    double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    // Strictly positive exponential variate.
    double exponential(double mean) { return -mean * std::log(uniform_open()); }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace qxor

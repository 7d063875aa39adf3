#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qxor/bitstring.hpp"
#include "qxor/config.hpp"

namespace qxor {

inline constexpr std::size_t kDefaultEnumerationCap = 12;
// Largest n for which a dense 2^n table is built from a closed form.
inline constexpr std::size_t kDenseCap = 24;

// Probability mass function over B^n (arity 1) or B^n x B^n (arity 2).
//
// Dense storage indexed by the integer value of the string, with the
// leftmost bit most significant. For pairs the index is (x << n) | y.
class ExactDistribution {
public:
    // Throws UsageError on a size mismatch, a negative mass, or a total
    // that differs from 1 by more than 1e-12.
    ExactDistribution(std::size_t n, std::size_t arity, std::vector<double> mass);

    static ExactDistribution uniform(std::size_t n);

    std::size_t support_length() const { return n_; }
    std::size_t arity() const { return arity_; }
    std::span<const double> mass() const { return mass_; }
    double operator[](std::uint64_t index) const { return mass_[index]; }

    double probability(const BitString &z) const;
    double probability(const BitString &x, const BitString &y) const;
    double total() const;

private:
    std::size_t n_;
    std::size_t arity_;
    std::vector<double> mass_;
};

struct BiasParams {
    double p0 = 0.5;
    double p1 = 0.5;
};

enum class Side { plus, times };

// Z_1: sum of the four efficiency-weighted single-pair weights.
double normalization_z1(const QrngConfig &cfg);

// Probability of the joint outcome (a, b) for one coincidence.
double pair_prob(bool a, bool b, const QrngConfig &cfg);

// Mass of the string pair (x, y) under the n-pair law, evaluated from the
// Hamming distance and symbol counts (no per-position product).
double pair_string_mass(const BitString &x, const BitString &y, const QrngConfig &cfg);

// Joint law of both output strings, enumerated over all 4^n pairs.
ExactDistribution exact_P(std::size_t n, const QrngConfig &cfg, std::size_t cap = kDefaultEnumerationCap);

// Per-bit law of one output string when the other is discarded.
BiasParams marginal_bias(const QrngConfig &cfg, Side side);

// Law of the offset-XOR output z_i = x_i ^ y_{i+j}, by enumeration of all
// pairs of (n+j)-bit strings. Requires n + j <= cap.
ExactDistribution exact_Q(std::size_t n, std::size_t j, const QrngConfig &cfg,
                          std::size_t cap = kDefaultEnumerationCap);

// Per-bit law of the aligned (j = 0) XOR output.
BiasParams xor_bias(const QrngConfig &cfg);

// Product form p0^#0 p1^#1 of the aligned XOR output law.
ExactDistribution closed_form_Q0(std::size_t n, const QrngConfig &cfg, std::size_t cap = kDenseCap);

// Total variation distance, 1/2 * sum |d1 - d2|.
double tv_distance(const ExactDistribution &d1, const ExactDistribution &d2);
// Plain L1 distance, sum |d1 - d2| (twice the total variation distance).
double l1_distance(const ExactDistribution &d1, const ExactDistribution &d2);

// Mass of the cylinder set {(u, v) : u[offset, offset+|x|) = x, v[...] = y}
// of a pair distribution.
double cylinder_probability(const ExactDistribution &pairs, std::size_t offset, const BitString &x,
                            const BitString &y);

// (1/2)(1 + cos 2theta). As printed this is the probability that the XOR of
// the two outcomes is 0 (equal outcomes).
double expectation_xor_quantum(double theta);
// 1 - 2 theta / pi.
double expectation_xor_classical(double theta);
// Long-run mean of the XOR bit, sin^2 theta = |C(theta) - 1| / 2.
double xor_mean_quantum(double theta);
// Singlet correlation with +1 for equal and -1 for different outcomes.
double correlation_quantum(double theta);

// First-order deviations from 1/2 of the quantum and classical curves at
// pi/4 + delta. Throws UsageError when |delta| > 0.2.
struct TaylorGap {
    double quantum = 0.0;
    double classical = 0.0;
};
TaylorGap taylor_gap(double delta_theta);

// CSV export: index,bitstring,probability (arity 1 only).
void write_distribution_csv(std::ostream &out, const ExactDistribution &d);
// CSV export: index,bitstring,deviation with deviation = mass - 2^-n.
void write_deviation_csv(std::ostream &out, const ExactDistribution &d);

}  // namespace qxor

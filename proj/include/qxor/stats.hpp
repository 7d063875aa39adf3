#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qxor/bitstring.hpp"
#include "qxor/exact.hpp"

namespace qxor {

inline constexpr double kDefaultAlpha = 0.01;

struct TestReport {
    std::string test_name;
    std::size_t k = 0;  // block length; 0 when not applicable
    double statistic = 0.0;
    std::optional<double> p_value;
    // Acceptance threshold for tests without a p-value (Borel bound).
    std::optional<double> threshold;
    bool pass = false;
    std::size_t sample_size = 0;
};

void to_json(nlohmann::json &j, const TestReport &r);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi2_survival(double statistic, double df);

// Goodness of fit of observed cell counts to the given cell probabilities.
// Cells with zero probability must have zero count (otherwise p = 0).
TestReport chi2_goodness_of_fit(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                double alpha = kDefaultAlpha);

// Non-overlapping k-bit blocks against the uniform law on 2^k cells.
// Requires 1 <= k <= 8 and |bits| >= 100 * 2^k.
TestReport chi2_uniformity(const BitString &bits, std::size_t k, double alpha = kDefaultAlpha);

// Non-overlapping block counts for each k in 1 .. floor(log2 log2 n); a k
// passes when every block frequency is within sqrt(log2 n / n) of 2^-k.
// Requires |bits| >= 64.
std::vector<TestReport> borel_normality(const BitString &bits);

// (#equal - #different) / n.
double correlation_estimate(const BitString &x, const BitString &y);

// Fraction of ones in xor_offset(x, y, j).
double exor_rate(const BitString &x, const BitString &y, std::size_t j);

struct ThetaEstimate {
    double theta = 0.0;
    double standard_error = 0.0;
    double rate = 0.0;
    bool degenerate = false;  // rate was 0 or 1; theta sits on the boundary
};

// Inverts Pr(outcomes differ) = sin^2 theta. Requires |x| = |y| >= 10^4.
ThetaEstimate estimate_theta(const BitString &x, const BitString &y);

struct BiasEstimate {
    double p1 = 0.5;
    double standard_error = 0.0;
};

// Fraction of ones with its binomial standard error.
BiasEstimate estimate_bias(const BitString &bits);

// Frequency distribution of equal-length samples.
ExactDistribution empirical_distribution(std::span<const BitString> samples, std::size_t n);
ExactDistribution empirical_distribution(std::span<const std::uint64_t> counts, std::size_t n);

// Counts of the 2^n values of consecutive non-overlapping n-bit blocks.
std::vector<std::uint64_t> block_counts(const BitString &bits, std::size_t n);

}  // namespace qxor

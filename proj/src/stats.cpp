#include "qxor/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "qxor/errors.hpp"
#include "qxor/extractors.hpp"

namespace qxor {

void to_json(nlohmann::json &j, const TestReport &r) {
    j = nlohmann::json{{"test", r.test_name},
                       {"k", r.k},
                       {"statistic", r.statistic},
                       {"pass", r.pass},
                       {"sample_size", r.sample_size}};
    j["p_value"] = r.p_value ? nlohmann::json(*r.p_value) : nlohmann::json(nullptr);
    if (r.threshold) {
        j["threshold"] = *r.threshold;
    }
}

double chi2_survival(double statistic, double df) {
    if (!(df > 0.0)) {
        throw UsageError("chi-square degrees of freedom must be positive");
    }
    if (statistic <= 0.0) {
        return 1.0;
    }
    if (std::isinf(statistic)) {
        return 0.0;
    }
    return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

TestReport chi2_goodness_of_fit(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                double alpha) {
    if (observed.size() != probabilities.size() || observed.size() < 2) {
        throw UsageError("chi-square: need matching cell counts and probabilities (>= 2 cells)");
    }
    std::uint64_t total = 0;
    for (auto c : observed) {
        total += c;
    }
    if (total == 0) {
        throw UsageError("chi-square: no observations");
    }
    double stat = 0.0;
    std::size_t cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(total);
        if (expected <= 0.0) {
            if (observed[i] != 0) {
                stat = std::numeric_limits<double>::infinity();
            }
            continue;
        }
        ++cells;
        const double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    TestReport r;
    r.test_name = "chi2";
    r.statistic = stat;
    r.p_value = cells >= 2 ? chi2_survival(stat, static_cast<double>(cells - 1)) : (std::isinf(stat) ? 0.0 : 1.0);
    r.pass = *r.p_value > alpha;
    r.sample_size = static_cast<std::size_t>(total);
    return r;
}

std::vector<std::uint64_t> block_counts(const BitString &bits, std::size_t n) {
    if (n == 0 || n > 24) {
        throw UsageError("block length must lie in 1..24");
    }
    std::vector<std::uint64_t> counts(std::size_t{1} << n);
    const std::size_t blocks = bits.size() / n;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            v = (v << 1) | static_cast<std::uint64_t>(bits[b * n + i]);
        }
        ++counts[v];
    }
    return counts;
}

TestReport chi2_uniformity(const BitString &bits, std::size_t k, double alpha) {
    if (k < 1 || k > 8) {
        throw UsageError("chi2_uniformity: k must lie in 1..8");
    }
    if (bits.size() < 100 * (std::size_t{1} << k)) {
        throw UsageError("chi2_uniformity: need at least 100 * 2^k bits");
    }
    const auto counts = block_counts(bits, k);
    const std::vector<double> uniform(counts.size(), 1.0 / static_cast<double>(counts.size()));
    TestReport r = chi2_goodness_of_fit(counts, uniform, alpha);
    r.test_name = "chi2_uniformity";
    r.k = k;
    return r;
}

std::vector<TestReport> borel_normality(const BitString &bits) {
    const std::size_t n = bits.size();
    if (n < 64) {
        throw UsageError("borel_normality: need at least 64 bits");
    }
    const double log_n = std::log2(static_cast<double>(n));
    const double bound = std::sqrt(log_n / static_cast<double>(n));
    const auto k_max = static_cast<std::size_t>(std::floor(std::log2(log_n)));
    std::vector<TestReport> reports;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const auto counts = block_counts(bits, k);
        const double blocks = static_cast<double>(n / k);
        const double target = 1.0 / static_cast<double>(counts.size());
        double worst = 0.0;
        for (auto c : counts) {
            worst = std::max(worst, std::abs(static_cast<double>(c) / blocks - target));
        }
        TestReport r;
        r.test_name = "borel_normality";
        r.k = k;
        r.statistic = worst;
        r.threshold = bound;
        r.pass = worst < bound;
        r.sample_size = n;
        reports.push_back(r);
    }
    return reports;
}

double correlation_estimate(const BitString &x, const BitString &y) {
    if (x.size() != y.size() || x.empty()) {
        throw UsageError("correlation_estimate: need equal, non-zero lengths");
    }
    const auto n = static_cast<double>(x.size());
    const auto different = static_cast<double>(hamming_distance(x, y));
    return (n - 2.0 * different) / n;
}

double exor_rate(const BitString &x, const BitString &y, std::size_t j) {
    const BitString z = xor_offset(x, y, j);
    return static_cast<double>(z.count(true)) / static_cast<double>(z.size());
}

ThetaEstimate estimate_theta(const BitString &x, const BitString &y) {
    if (x.size() != y.size() || x.size() < 10000) {
        throw UsageError("estimate_theta: need equal lengths of at least 10^4");
    }
    ThetaEstimate e;
    e.rate = exor_rate(x, y, 0);
    e.degenerate = e.rate <= 0.0 || e.rate >= 1.0;
    e.theta = std::asin(std::sqrt(std::clamp(e.rate, 0.0, 1.0)));
    // d theta / d r = 1 / (2 sqrt(r (1 - r))) against Var r = r (1 - r) / n.
    e.standard_error = 0.5 / std::sqrt(static_cast<double>(x.size()));
    return e;
}

BiasEstimate estimate_bias(const BitString &bits) {
    if (bits.empty()) {
        throw UsageError("estimate_bias: empty input");
    }
    const auto n = static_cast<double>(bits.size());
    const double p = static_cast<double>(bits.count(true)) / n;
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / n)};
}

ExactDistribution empirical_distribution(std::span<const BitString> samples, std::size_t n) {
    if (samples.empty()) {
        throw UsageError("empirical_distribution: no samples");
    }
    if (n == 0 || n > 24) {
        throw UsageError("empirical_distribution: length must lie in 1..24");
    }
    std::vector<std::uint64_t> counts(std::size_t{1} << n);
    for (const auto &s : samples) {
        if (s.size() != n) {
            throw UsageError("empirical_distribution: samples have mixed lengths");
        }
        ++counts[s.to_uint()];
    }
    return empirical_distribution(counts, n);
}

ExactDistribution empirical_distribution(std::span<const std::uint64_t> counts, std::size_t n) {
    if (counts.size() != (std::size_t{1} << n)) {
        throw UsageError("empirical_distribution: count table has the wrong size");
    }
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    if (total == 0) {
        throw UsageError("empirical_distribution: no samples");
    }
    std::vector<double> mass(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        mass[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return ExactDistribution(n, 1, std::move(mass));
}

}  // namespace qxor

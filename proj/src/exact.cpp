#include "qxor/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>

#include "qxor/errors.hpp"
#include "qxor/numeric.hpp"

namespace qxor {

namespace {

constexpr double kNormTolerance = 1e-12;
// Fixed number of work partitions so the reduction order never depends on
// the number of threads actually used.
constexpr std::uint64_t kPartitions = 64;

double sin2(double theta) {
    const double s = std::sin(theta);
    return s * s;
}

double cos2(double theta) {
    const double c = std::cos(theta);
    return c * c;
}

void check_cap(std::size_t length, std::size_t cap, const char *what) {
    if (length == 0) {
        throw UsageError(std::string(what) + ": string length must be positive");
    }
    if (length > cap || length > 30) {
        throw ResourceError(std::string(what) + ": length " + std::to_string(length) +
                            " exceeds enumeration cap " + std::to_string(cap));
    }
}

// w[k] = a^(m-k) * b^k for k = 0..m.
std::vector<double> power_table(double a, double b, std::size_t m) {
    std::vector<double> w(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        w[k] = std::pow(a, static_cast<double>(m - k)) * std::pow(b, static_cast<double>(k));
    }
    return w;
}

// Runs body(first, last) over kPartitions contiguous slices of [0, count)
// and returns the per-partition results in partition order.
template <typename Result, typename Body>
std::vector<Result> run_partitioned(std::uint64_t count, Body body) {
    const std::uint64_t parts = std::min<std::uint64_t>(kPartitions, count);
    std::vector<Result> results(parts);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::min<std::uint64_t>(hw, parts);
    auto slice = [&](std::uint64_t p) {
        const std::uint64_t first = count * p / parts;
        const std::uint64_t last = count * (p + 1) / parts;
        results[p] = body(first, last);
    };
    if (workers <= 1) {
        for (std::uint64_t p = 0; p < parts; ++p) {
            slice(p);
        }
        return results;
    }
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t p = w; p < parts; p += workers) {
                slice(p);
            }
        });
    }
    pool.clear();
    return results;
}

}  // namespace

ExactDistribution::ExactDistribution(std::size_t n, std::size_t arity, std::vector<double> mass)
    : n_(n), arity_(arity), mass_(std::move(mass)) {
    if (arity_ != 1 && arity_ != 2) {
        throw UsageError("ExactDistribution arity must be 1 or 2");
    }
    if (n_ * arity_ >= 63 || mass_.size() != (std::size_t{1} << (n_ * arity_))) {
        throw UsageError("ExactDistribution mass table has the wrong size");
    }
    for (double m : mass_) {
        if (!(m >= 0.0)) {
            throw UsageError("ExactDistribution mass must be non-negative");
        }
    }
    if (std::abs(total() - 1.0) > kNormTolerance) {
        throw UsageError("ExactDistribution is not normalized");
    }
}

ExactDistribution ExactDistribution::uniform(std::size_t n) {
    const std::size_t size = std::size_t{1} << n;
    return ExactDistribution(n, 1, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

double ExactDistribution::probability(const BitString &z) const {
    if (arity_ != 1 || z.size() != n_) {
        throw UsageError("probability: string does not match the distribution support");
    }
    return mass_[z.to_uint()];
}

double ExactDistribution::probability(const BitString &x, const BitString &y) const {
    if (arity_ != 2 || x.size() != n_ || y.size() != n_) {
        throw UsageError("probability: pair does not match the distribution support");
    }
    return mass_[(x.to_uint() << n_) | y.to_uint()];
}

double ExactDistribution::total() const {
    CompensatedSum s;
    for (double m : mass_) {
        s += m;
    }
    return s.value();
}

double normalization_z1(const QrngConfig &cfg) {
    const double s = sin2(cfg.theta);
    const double c = cos2(cfg.theta);
    return s * (cfg.e0_plus * cfg.e1_times + cfg.e1_plus * cfg.e0_times) +
           c * (cfg.e0_plus * cfg.e0_times + cfg.e1_plus * cfg.e1_times);
}

double pair_prob(bool a, bool b, const QrngConfig &cfg) {
    const double angle = (a != b) ? sin2(cfg.theta) : cos2(cfg.theta);
    return angle * cfg.efficiency_plus(a) * cfg.efficiency_times(b) / normalization_z1(cfg);
}

double pair_string_mass(const BitString &x, const BitString &y, const QrngConfig &cfg) {
    const auto n = static_cast<double>(x.size());
    const auto d = static_cast<double>(hamming_distance(x, y));
    const auto x1 = static_cast<double>(count_bits(x, true));
    const auto y1 = static_cast<double>(count_bits(y, true));
    const double weight = std::pow(sin2(cfg.theta), d) * std::pow(cos2(cfg.theta), n - d) *
                          std::pow(cfg.e0_plus, n - x1) * std::pow(cfg.e1_plus, x1) *
                          std::pow(cfg.e0_times, n - y1) * std::pow(cfg.e1_times, y1);
    return weight / std::pow(normalization_z1(cfg), n);
}

ExactDistribution exact_P(std::size_t n, const QrngConfig &cfg, std::size_t cap) {
    check_cap(n, cap, "exact_P");
    const std::uint64_t strings = std::uint64_t{1} << n;
    const auto flip = power_table(cos2(cfg.theta), sin2(cfg.theta), n);
    const auto plus = power_table(cfg.e0_plus, cfg.e1_plus, n);
    const auto times = power_table(cfg.e0_times, cfg.e1_times, n);
    const double inv_z = 1.0 / std::pow(normalization_z1(cfg), static_cast<double>(n));

    std::vector<double> mass(strings * strings);
    for (std::uint64_t x = 0; x < strings; ++x) {
        const double row = inv_z * plus[std::popcount(x)];
        for (std::uint64_t y = 0; y < strings; ++y) {
            mass[(x << n) | y] = row * times[std::popcount(y)] * flip[std::popcount(x ^ y)];
        }
    }
    return ExactDistribution(n, 2, std::move(mass));
}

BiasParams marginal_bias(const QrngConfig &cfg, Side side) {
    const double s = sin2(cfg.theta);
    const double c = cos2(cfg.theta);
    const double z = normalization_z1(cfg);
    if (side == Side::plus) {
        return {cfg.e0_plus * (cfg.e1_times * s + cfg.e0_times * c) / z,
                cfg.e1_plus * (cfg.e0_times * s + cfg.e1_times * c) / z};
    }
    return {cfg.e0_times * (cfg.e1_plus * s + cfg.e0_plus * c) / z,
            cfg.e1_times * (cfg.e0_plus * s + cfg.e1_plus * c) / z};
}

ExactDistribution exact_Q(std::size_t n, std::size_t j, const QrngConfig &cfg, std::size_t cap) {
    if (n == 0) {
        throw UsageError("exact_Q: output length must be positive");
    }
    const std::size_t m = n + j;
    check_cap(m, cap, "exact_Q");
    const std::uint64_t inputs = std::uint64_t{1} << m;
    const std::uint64_t outputs = std::uint64_t{1} << n;
    const std::uint64_t low_mask = outputs - 1;

    const auto flip = power_table(cos2(cfg.theta), sin2(cfg.theta), m);
    const auto plus = power_table(cfg.e0_plus, cfg.e1_plus, m);
    const auto times = power_table(cfg.e0_times, cfg.e1_times, m);
    const double inv_z = 1.0 / std::pow(normalization_z1(cfg), static_cast<double>(m));

    // x occupies the high bits of the pair; z's leftmost n bits come from
    // x[1..n] = x >> j and from y[j+1..j+n] = y & low_mask.
    auto partials = run_partitioned<std::vector<CompensatedSum>>(
        inputs, [&](std::uint64_t first, std::uint64_t last) {
            std::vector<CompensatedSum> acc(outputs);
            for (std::uint64_t x = first; x < last; ++x) {
                const std::uint64_t head = x >> j;
                const double row = inv_z * plus[std::popcount(x)];
                for (std::uint64_t y = 0; y < inputs; ++y) {
                    acc[head ^ (y & low_mask)] += row * times[std::popcount(y)] * flip[std::popcount(x ^ y)];
                }
            }
            return acc;
        });

    std::vector<CompensatedSum> total(outputs);
    for (const auto &part : partials) {
        for (std::uint64_t z = 0; z < outputs; ++z) {
            total[z].merge(part[z]);
        }
    }
    std::vector<double> mass(outputs);
    for (std::uint64_t z = 0; z < outputs; ++z) {
        mass[z] = total[z].value();
    }
    return ExactDistribution(n, 1, std::move(mass));
}

BiasParams xor_bias(const QrngConfig &cfg) {
    const double z = normalization_z1(cfg);
    return {cos2(cfg.theta) * (cfg.e0_plus * cfg.e0_times + cfg.e1_plus * cfg.e1_times) / z,
            sin2(cfg.theta) * (cfg.e0_plus * cfg.e1_times + cfg.e1_plus * cfg.e0_times) / z};
}

ExactDistribution closed_form_Q0(std::size_t n, const QrngConfig &cfg, std::size_t cap) {
    check_cap(n, cap, "closed_form_Q0");
    const BiasParams b = xor_bias(cfg);
    const auto table = power_table(b.p0, b.p1, n);
    std::vector<double> mass(std::size_t{1} << n);
    for (std::uint64_t z = 0; z < mass.size(); ++z) {
        mass[z] = table[std::popcount(z)];
    }
    return ExactDistribution(n, 1, std::move(mass));
}

double l1_distance(const ExactDistribution &d1, const ExactDistribution &d2) {
    if (d1.support_length() != d2.support_length() || d1.arity() != d2.arity()) {
        throw UsageError("distance between distributions with different supports");
    }
    CompensatedSum s;
    for (std::size_t i = 0; i < d1.mass().size(); ++i) {
        s += std::abs(d1[i] - d2[i]);
    }
    return s.value();
}

double tv_distance(const ExactDistribution &d1, const ExactDistribution &d2) {
    return std::min(1.0, 0.5 * l1_distance(d1, d2));
}

double cylinder_probability(const ExactDistribution &pairs, std::size_t offset, const BitString &x,
                            const BitString &y) {
    const std::size_t n = pairs.support_length();
    if (pairs.arity() != 2) {
        throw UsageError("cylinder_probability needs a pair distribution");
    }
    if (x.size() != y.size() || offset + x.size() > n) {
        throw UsageError("cylinder does not fit the support");
    }
    if (x.empty()) {
        return pairs.total();
    }
    const std::size_t shift = n - offset - x.size();
    const std::uint64_t mask = ((std::uint64_t{1} << x.size()) - 1) << shift;
    const std::uint64_t want_x = x.to_uint() << shift;
    const std::uint64_t want_y = y.to_uint() << shift;
    const std::uint64_t strings = std::uint64_t{1} << n;
    CompensatedSum s;
    for (std::uint64_t u = 0; u < strings; ++u) {
        if ((u & mask) != want_x) {
            continue;
        }
        for (std::uint64_t v = 0; v < strings; ++v) {
            if ((v & mask) == want_y) {
                s += pairs[(u << n) | v];
            }
        }
    }
    return s.value();
}

double expectation_xor_quantum(double theta) { return 0.5 * (1.0 + std::cos(2.0 * theta)); }

double expectation_xor_classical(double theta) { return 1.0 - 2.0 * theta / std::numbers::pi; }

double xor_mean_quantum(double theta) { return sin2(theta); }

double correlation_quantum(double theta) { return std::cos(2.0 * theta); }

TaylorGap taylor_gap(double delta_theta) {
    if (!(std::abs(delta_theta) <= 0.2)) {
        throw UsageError("taylor_gap: |delta_theta| must be <= 0.2");
    }
    return {delta_theta, 2.0 / std::numbers::pi * delta_theta};
}

void write_distribution_csv(std::ostream &out, const ExactDistribution &d) {
    if (d.arity() != 1) {
        throw UsageError("CSV export supports single-string distributions");
    }
    out << "index,bitstring,probability\n";
    char buf[64];
    for (std::uint64_t i = 0; i < d.mass().size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", d[i]);
        out << i << ',' << BitString::from_uint(i, d.support_length()).to_string() << ',' << buf << '\n';
    }
}

void write_deviation_csv(std::ostream &out, const ExactDistribution &d) {
    if (d.arity() != 1) {
        throw UsageError("CSV export supports single-string distributions");
    }
    const double u = 1.0 / static_cast<double>(d.mass().size());
    out << "index,bitstring,deviation\n";
    char buf[64];
    for (std::uint64_t i = 0; i < d.mass().size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", d[i] - u);
        out << i << ',' << BitString::from_uint(i, d.support_length()).to_string() << ',' << buf << '\n';
    }
}

}  // namespace qxor

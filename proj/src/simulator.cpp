#include "qxor/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qxor/errors.hpp"
#include "qxor/exact.hpp"
#include "qxor/rng.hpp"

namespace qxor {

namespace {

// RNG stream ids, one per stochastic stage.
constexpr std::uint64_t kSourceStream = 0;
constexpr std::uint64_t kDoubleCountStream = 1;

// Cumulative distribution over the cells (0,0), (0,1), (1,0), (1,1).
std::array<double, 3> pair_cdf(const QrngConfig &cfg) {
    const double p00 = pair_prob(false, false, cfg);
    const double p01 = pair_prob(false, true, cfg);
    const double p10 = pair_prob(true, false, cfg);
    return {p00, p00 + p01, p00 + p01 + p10};
}

double clamp_efficiency(double e) { return std::clamp(e, 0.0, 1.0); }

}  // namespace

SimulationResult sample_pairs(std::size_t n, const QrngConfig &cfg, std::uint64_t seed) {
    cfg.validate();
    CounterRng rng(seed, kSourceStream);
    SimulationResult out;
    out.seed = seed;
    out.generated = n;
    out.records.reserve(n);

    const auto fixed_cdf = pair_cdf(cfg);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t += rng.exponential(cfg.mean_pair_interval);
        const auto cdf = cfg.drift ? pair_cdf(cfg.at_time(t)) : fixed_cdf;
        const double u = rng.uniform();
        const int cell = (u >= cdf[0]) + (u >= cdf[1]) + (u >= cdf[2]);
        out.records.push_back({t, (cell & 2) != 0, (cell & 1) != 0});
    }
    return out;
}

SimulationResult sample_pairs_physical(std::size_t n, const QrngConfig &cfg, std::uint64_t seed) {
    cfg.validate();
    CounterRng rng(seed, kSourceStream);
    SimulationResult out;
    out.seed = seed;
    out.records.reserve(n);

    const double flip = std::sin(cfg.theta) * std::sin(cfg.theta);
    double t = 0.0;
    while (out.records.size() < n) {
        t += rng.exponential(cfg.mean_pair_interval);
        const bool a = rng.bernoulli(0.5);
        const bool b = a != rng.bernoulli(flip);
        const QrngConfig now = cfg.drift ? cfg.at_time(t) : cfg;
        const bool seen_a = rng.bernoulli(clamp_efficiency(now.efficiency_plus(a)));
        const bool seen_b = rng.bernoulli(clamp_efficiency(now.efficiency_times(b)));
        ++out.generated;
        if (seen_a && seen_b) {
            out.records.push_back({t, a, b});
        } else {
            ++out.dropped_loss;
        }
    }
    return out;
}

PairStream apply_double_counting(const PairStream &stream, double p_dc, std::uint64_t seed) {
    if (!(p_dc >= 0.0 && p_dc <= 1.0)) {
        throw UsageError("double counting probability must lie in [0, 1]");
    }
    CounterRng rng(seed, kDoubleCountStream);
    PairStream out = stream;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const bool mismatch = rng.bernoulli(p_dc);
        if (mismatch && i + 1 < stream.size()) {
            out[i].outcome_times = stream[i + 1].outcome_times;
        }
    }
    return out;
}

PairStream dead_time_filter(const PairStream &stream, double dead_time) {
    if (!(dead_time >= 0.0)) {
        throw UsageError("dead time must be >= 0");
    }
    PairStream out;
    out.reserve(stream.size());
    for (const auto &r : stream) {
        if (out.empty() || r.time - out.back().time > dead_time) {
            out.push_back(r);
        }
    }
    return out;
}

std::size_t demon_period(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) {
        throw UsageError("demon rho must lie in (0, 1)");
    }
    return static_cast<std::size_t>(std::ceil(1.0 / (1.0 - rho) - 1e-9));
}

namespace {

// Returns the indices of kept items; is_one(i) reports whether input item i
// carries a 1.
template <typename IsOne>
std::vector<std::size_t> demon_select(std::size_t count, std::size_t period, IsOne is_one, std::size_t &rejected) {
    std::vector<std::size_t> kept;
    kept.reserve(count);
    rejected = 0;
    std::size_t in = 0;
    while (in < count) {
        const bool forced = (kept.size() + 1) % period == 0;
        if (forced) {
            while (in < count && is_one(in)) {
                ++in;
                ++rejected;
            }
            if (in == count) {
                break;
            }
        }
        kept.push_back(in++);
    }
    return kept;
}

}  // namespace

DemonOutput demon_filter(const BitString &bits, double rho) {
    DemonOutput out;
    out.period = demon_period(rho);
    const auto kept = demon_select(bits.size(), out.period, [&](std::size_t i) { return bits[i]; }, out.rejected);
    out.bits.reserve(kept.size());
    for (auto i : kept) {
        out.bits.push_back(bits[i]);
    }
    return out;
}

PairStream demon_filter_pairs(const PairStream &stream, double rho, std::size_t *rejected) {
    std::size_t dropped = 0;
    const auto kept = demon_select(
        stream.size(), demon_period(rho),
        [&](std::size_t i) { return stream[i].outcome_plus != stream[i].outcome_times; }, dropped);
    PairStream out;
    out.reserve(kept.size());
    for (auto i : kept) {
        out.push_back(stream[i]);
    }
    if (rejected) {
        *rejected = dropped;
    }
    return out;
}

SimulationResult simulate(std::size_t n, const QrngConfig &cfg, std::uint64_t seed, bool physical) {
    SimulationResult result = physical ? sample_pairs_physical(n, cfg, seed) : sample_pairs(n, cfg, seed);
    if (cfg.double_count_prob > 0.0) {
        result.records = apply_double_counting(result.records, cfg.double_count_prob, seed);
    }
    if (cfg.dead_time_Td > 0.0) {
        const std::size_t before = result.records.size();
        result.records = dead_time_filter(result.records, cfg.dead_time_Td);
        result.dropped_dead_time = before - result.records.size();
    }
    if (cfg.demon_rho) {
        std::size_t rejected = 0;
        result.records = demon_filter_pairs(result.records, *cfg.demon_rho, &rejected);
        result.dropped_demon = rejected;
    }
    return result;
}

BitString plus_bits(const PairStream &stream) {
    BitString out;
    out.reserve(stream.size());
    for (const auto &r : stream) {
        out.push_back(r.outcome_plus);
    }
    return out;
}

BitString times_bits(const PairStream &stream) {
    BitString out;
    out.reserve(stream.size());
    for (const auto &r : stream) {
        out.push_back(r.outcome_times);
    }
    return out;
}

BitString xor_bits(const PairStream &stream) {
    BitString out;
    out.reserve(stream.size());
    for (const auto &r : stream) {
        out.push_back(r.outcome_plus != r.outcome_times);
    }
    return out;
}

void write_stream_ndjson(std::ostream &out, const PairStream &stream) {
    char buf[96];
    for (const auto &r : stream) {
        std::snprintf(buf, sizeof buf, "{\"t\":%.17g,\"a\":%d,\"b\":%d}\n", r.time, r.outcome_plus ? 1 : 0,
                      r.outcome_times ? 1 : 0);
        out << buf;
    }
}

PairStream read_stream_ndjson(std::istream &in) {
    PairStream out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            const int a = j.at("a").get<int>();
            const int b = j.at("b").get<int>();
            if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
                throw FormatError("outcome is not a bit");
            }
            PairRecord r{j.at("t").get<double>(), a == 1, b == 1};
            if (!out.empty() && !(r.time > out.back().time)) {
                throw FormatError("records are not strictly time-ordered");
            }
            out.push_back(r);
        } catch (const nlohmann::json::exception &e) {
            throw FormatError("stream line " + std::to_string(lineno) + ": " + e.what());
        } catch (const FormatError &e) {
            throw FormatError("stream line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace qxor

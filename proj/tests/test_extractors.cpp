#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qxor/errors.hpp"
#include "qxor/exact.hpp"
#include "qxor/extractors.hpp"
#include "qxor/simulator.hpp"
#include "qxor/stats.hpp"
#include "test_support.hpp"

using namespace qxor;

namespace {

BitString b(const char *t) { return BitString::from_string(t); }

// Splits the input at random points and runs it through a stream.
template <typename Feed, typename Finish>
BitString chunked(std::size_t n, CounterRng &rng, Feed feed, Finish finish) {
    BitString out;
    std::size_t pos = 0;
    while (pos < n) {
        const std::size_t len = std::min<std::size_t>(n - pos, 1 + rng() % 97);
        out.append(feed(pos, len));
        pos += len;
    }
    out.append(finish());
    return out;
}

}  // namespace

TEST_CASE("xor_offset examples") {
    CHECK(xor_offset(b("1011"), b("1011"), 0) == b("0000"));
    CHECK(xor_offset(b("1010"), b("0110"), 0) == b("1100"));
    CHECK(xor_offset(b("110"), b("011"), 1) == b("00"));
    CHECK_THROWS_AS(xor_offset(b("110"), b("01"), 0), UsageError);
    CHECK_THROWS_AS(xor_offset(b("110"), b("011"), 3), UsageError);
}

TEST_CASE("von_neumann examples") {
    auto r = von_neumann(b("00011011"));
    CHECK(r.bits == b("01"));
    CHECK(r.consumed == 8);
    CHECK(r.discarded == 4);
    CHECK(von_neumann(b("0000")).bits.empty());
    CHECK(von_neumann(b("0110")).bits == b("01"));
    r = von_neumann(b("011"));
    CHECK(r.bits == b("0"));
    CHECK(r.discarded == 1);
}

TEST_CASE("peres reduces to von Neumann at depth 1") {
    CHECK(peres(b("0011"), 1).bits.empty());
    CounterRng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto x = testing::random_bits(rng, 64, 0.3);
        const auto p = peres(x, 1);
        const auto v = von_neumann(x);
        REQUIRE(p.bits == v.bits);
        REQUIRE(p.discarded == v.discarded);
    }
    CHECK_THROWS_AS(peres(b("01"), 0), UsageError);
}

TEST_CASE("peres recursion on a small input") {
    // pairs 00 11 01 10: vn -> "01"; parity u = 0011 -> vn "" ; equal values v = 01 -> vn "0".
    // depth 2: "01" || vn(0011) || vn(01) = "01" + "" + "0".
    CHECK(peres(b("00110110"), 2).bits == b("010"));
}

TEST_CASE("peres yield beats von Neumann on uniform input") {
    CounterRng rng(6);
    const auto x = testing::random_bits(rng, 1000000);
    const auto vn = von_neumann(x);
    const auto p4 = peres(x, 4);
    CHECK(p4.bits.size() > vn.bits.size());
    const auto bias = estimate_bias(p4.bits);
    CHECK(std::abs(bias.p1 - 0.5) < 3 * bias.standard_error);
}

TEST_CASE("peres output is unbiased on a biased source") {
    CounterRng rng(8);
    const auto x = testing::random_bits(rng, 1000000, 0.8);
    const auto bias = estimate_bias(peres(x, 4).bits);
    CHECK(std::abs(bias.p1 - 0.5) < 3 * bias.standard_error);
}

TEST_CASE("pair_von_neumann examples") {
    CHECK(pair_von_neumann(b("01"), b("00")).bits == b("0"));
    CHECK(pair_von_neumann(b("00"), b("11")).bits.empty());
    CHECK(pair_von_neumann(b("10"), b("01")).bits == b("1"));
    const auto r = pair_von_neumann(b("001"), b("110"));
    CHECK(r.consumed == 3);
    CHECK(r.discarded == 3);
    CHECK_THROWS_AS(pair_von_neumann(b("01"), b("0")), UsageError);
}

TEST_CASE("von Neumann unbiasedness and yield at p = 0.7") {
    CounterRng rng(9);
    const auto x = testing::random_bits(rng, 1000000, 0.7);
    const auto r = von_neumann(x);
    const auto bias = estimate_bias(r.bits);
    CHECK(std::abs(bias.p1 - 0.5) < 3 * bias.standard_error);
    // Each of the n/2 pairs emits with probability 2 p (1 - p).
    const double q = 2 * 0.7 * 0.3;
    const double yield = static_cast<double>(r.bits.size()) / 1e6;
    CHECK(std::abs(yield - 0.21) < 3 * std::sqrt(5e5 * q * (1 - q)) / 1e6);
}

TEST_CASE("pair_von_neumann exact one-pair law is balanced") {
    CounterRng rng(10);
    std::vector<QrngConfig> configs = {testing::reference_config()};
    for (int i = 0; i < 20; ++i) {
        configs.push_back(testing::random_config(rng));
    }
    for (const auto &cfg : configs) {
        double zero = 0.0;
        double one = 0.0;
        for (int c = 0; c < 16; ++c) {
            const bool a1 = c & 8, b1 = c & 4, a2 = c & 2, b2 = c & 1;
            const double p = pair_prob(a1, b1, cfg) * pair_prob(a2, b2, cfg);
            const int v1 = 2 * a1 + b1;
            const int v2 = 2 * a2 + b2;
            const auto out = pair_von_neumann(BitString::from_uint(2 * a1 + a2, 2), BitString::from_uint(2 * b1 + b2, 2));
            if (v1 < v2) {
                REQUIRE(out.bits == b("0"));
                zero += p;
            } else if (v1 > v2) {
                REQUIRE(out.bits == b("1"));
                one += p;
            } else {
                REQUIRE(out.bits.empty());
            }
        }
        CHECK(std::abs(zero - one) < 1e-14);
    }
}

TEST_CASE("pair_von_neumann yield formula") {
    CounterRng rng(15);
    std::vector<QrngConfig> configs = {testing::reference_config(), testing::equal_config(std::numbers::pi / 4)};
    for (int i = 0; i < 10; ++i) {
        configs.push_back(testing::random_config(rng));
    }
    for (const auto &cfg : configs) {
        double emit = 0.0;
        for (int c = 0; c < 16; ++c) {
            const bool a1 = c & 8, b1 = c & 4, a2 = c & 2, b2 = c & 1;
            if (2 * a1 + b1 != 2 * a2 + b2) {
                emit += pair_prob(a1, b1, cfg) * pair_prob(a2, b2, cfg);
            }
        }
        CHECK(std::abs(pair_von_neumann_yield(cfg) - emit / 2) < 1e-15);
        CHECK(pair_von_neumann_yield(cfg) <= 0.375 + 1e-15);
    }
    CHECK(pair_von_neumann_yield(testing::equal_config(std::numbers::pi / 4)) == doctest::Approx(0.375));

    const auto cfg = testing::reference_config();
    const auto r = sample_pairs(1000000, cfg, 16);
    const auto out = pair_von_neumann(plus_bits(r.records), times_bits(r.records));
    const double q = 2 * pair_von_neumann_yield(cfg);
    CHECK(std::abs(static_cast<double>(out.bits.size()) / 1e6 - q / 2) < 3 * std::sqrt(5e5 * q * (1 - q)) / 1e6);
    const auto bias = estimate_bias(out.bits);
    CHECK(std::abs(bias.p1 - 0.5) < 3 * bias.standard_error);
}

TEST_CASE("pair_von_neumann yield on uniform input") {
    CounterRng rng(11);
    const auto x = testing::random_bits(rng, 1000000);
    const auto y = testing::random_bits(rng, 1000000);
    const auto r = pair_von_neumann(x, y);
    const double yield = static_cast<double>(r.bits.size()) / 1e6;
    // 5e5 position pairs, each emitting with probability 3/4.
    CHECK(std::abs(yield - 0.375) < 3 * std::sqrt(5e5 * 0.75 * 0.25) / 1e6);
}

TEST_CASE("chunk boundaries do not change stream output") {
    CounterRng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 500 + rng() % 3000;
        const auto x = testing::random_bits(rng, n, 0.35);
        const auto y = testing::random_bits(rng, n, 0.6);

        VonNeumannStream vn;
        CHECK(chunked(n, rng, [&](std::size_t p, std::size_t l) { return vn.feed(x.slice(p, l)); },
                      [&] { return vn.finish(); }) == von_neumann(x).bits);
        CHECK(vn.counts().discarded == von_neumann(x).discarded);

        PairVonNeumannStream pvn;
        CHECK(chunked(n, rng, [&](std::size_t p, std::size_t l) { return pvn.feed(x.slice(p, l), y.slice(p, l)); },
                      [&] { return pvn.finish(); }) == pair_von_neumann(x, y).bits);

        const std::size_t j = rng() % 5;
        XorOffsetStream xs(j);
        CHECK(chunked(n, rng, [&](std::size_t p, std::size_t l) { return xs.feed(x.slice(p, l), y.slice(p, l)); },
                      [&] { return BitString(); }) == xor_offset(x, y, j));

        PeresStream ps(3, 256);
        BitString blocks;
        for (std::size_t p = 0; p < n; p += 256) {
            blocks.append(peres(x.slice(p, std::min<std::size_t>(256, n - p)), 3).bits);
        }
        CHECK(chunked(n, rng, [&](std::size_t p, std::size_t l) { return ps.feed(x.slice(p, l)); },
                      [&] { return ps.finish(); }) == blocks);
    }
}

TEST_CASE("offset XOR of simulated pairs follows exact_Q") {
    const auto cfg = testing::reference_config();
    const std::size_t n = 6;
    for (std::size_t j : {0u, 1u, 2u}) {
        const std::size_t samples = 200000;
        const auto r = sample_pairs(samples * (n + j), cfg, 40 + j);
        const auto x = plus_bits(r.records);
        const auto y = times_bits(r.records);
        std::vector<std::uint64_t> counts(std::size_t{1} << n);
        for (std::size_t s = 0; s < samples; ++s) {
            const std::size_t off = s * (n + j);
            ++counts[xor_offset(x.slice(off, n + j), y.slice(off, n + j), j).to_uint()];
        }
        const auto q = exact_Q(n, j, cfg);
        CHECK(chi2_goodness_of_fit(counts, q.mass()).p_value.value() > 0.001);
    }
}

#include <doctest.h>

#include "qxor/bitstring.hpp"
#include "qxor/errors.hpp"
#include "test_support.hpp"

using namespace qxor;

TEST_CASE("from_uint zero-extends on the left") {
    CHECK(BitString::from_uint(1, 10).to_string() == "0000000001");
    CHECK(BitString::from_uint(2, 10).to_string() == "0000000010");
    CHECK(BitString::from_uint(174, 10).to_string() == "0010101110");
    CHECK(BitString::from_uint(973, 10).to_uint() == 973);
    CHECK(BitString::from_uint(0, 0).empty());
}

TEST_CASE("text round trip and invalid characters") {
    const auto s = BitString::from_string("0110100111");
    CHECK(s.size() == 10);
    CHECK(s.to_string() == "0110100111");
    CHECK_THROWS_AS(BitString::from_string("01x"), FormatError);
}

TEST_CASE("hamming distance examples") {
    auto b = [](const char *t) { return BitString::from_string(t); };
    CHECK(hamming_distance(b("1010"), b("1010")) == 0);
    CHECK(hamming_distance(b("0000"), b("1111")) == 4);
    CHECK(hamming_distance(b("0110"), b("1110")) == 1);
    CHECK_THROWS_AS(hamming_distance(b("01"), b("011")), UsageError);
}

TEST_CASE("count_bits examples") {
    CHECK(count_bits(BitString::from_string("0110"), true) == 2);
    CHECK(count_bits(BitString(), false) == 0);
    CHECK(count_bits(BitString::from_string("000"), false) == 3);
}

TEST_CASE("hamming distance properties over random strings") {
    CounterRng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 300;
        const auto x = testing::random_bits(rng, n);
        const auto y = testing::random_bits(rng, n);
        CHECK(hamming_distance(x, y) == count_bits(x ^ y, true));
        CHECK(count_bits(x, false) + count_bits(x, true) == n);

        const std::size_t cut = rng() % (n + 1);
        const auto d1 = hamming_distance(x.slice(0, cut), y.slice(0, cut));
        const auto d2 = hamming_distance(x.slice(cut, n - cut), y.slice(cut, n - cut));
        CHECK(d1 + d2 == hamming_distance(x, y));
        CHECK(concat(x.slice(0, cut), x.slice(cut, n - cut)) == x);
    }
}

TEST_CASE("packed storage across word boundaries") {
    BitString s(130, true);
    CHECK(s.count(true) == 130);
    s.set(64, false);
    CHECK(!s[64]);
    CHECK(s.slice(60, 10).to_string() == "1111011111");
    CHECK(complement(s).count(true) == 1);
    CHECK_THROWS_AS(s.at(130), UsageError);
}

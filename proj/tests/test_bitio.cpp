#include <doctest.h>

#include <sstream>

#include "qxor/bitio.hpp"
#include "qxor/errors.hpp"
#include "test_support.hpp"

using namespace qxor;

TEST_CASE("ASCII format layout") {
    std::ostringstream out;
    write_bits(out, BitString::from_string("0110"), BitFormat::ascii);
    CHECK(out.str() == "#bits=4\n0110\n");
}

TEST_CASE("packed format layout is least significant bit first") {
    std::ostringstream out;
    write_bits(out, BitString::from_string("1000000001"), BitFormat::packed);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 2);
    CHECK(static_cast<unsigned char>(bytes[0]) == 0x01);
    CHECK(static_cast<unsigned char>(bytes[1]) == 0x02);
}

TEST_CASE("round trips in both formats with chunked reads") {
    CounterRng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 8 * (1 + rng() % 400);
        const auto bits = testing::random_bits(rng, n);
        for (auto fmt : {BitFormat::ascii, BitFormat::packed}) {
            std::stringstream io;
            write_bits(io, bits, fmt);
            BitReader reader(io, BitFormat::automatic);
            CHECK(reader.format() == fmt);
            BitString back;
            for (;;) {
                auto chunk = reader.next(1 + rng() % 200);
                if (chunk.empty()) {
                    break;
                }
                back.append(chunk);
            }
            CHECK(back == bits);
        }
    }
}

TEST_CASE("packed reads honour an explicit bit count") {
    std::stringstream io;
    write_bits(io, BitString::from_string("10110"), BitFormat::packed);
    CHECK(read_bits(io, BitFormat::packed, 5) == BitString::from_string("10110"));
}

TEST_CASE("malformed ASCII files") {
    std::stringstream no_header("0101\n");
    CHECK_THROWS_AS(read_bits(no_header, BitFormat::ascii), FormatError);
    std::stringstream bad_char("#bits=3\n0x1\n");
    CHECK_THROWS_AS(read_bits(bad_char, BitFormat::ascii), FormatError);
    std::stringstream short_body("#bits=8\n0101\n");
    CHECK_THROWS_AS(read_bits(short_body, BitFormat::ascii), FormatError);
    std::stringstream bad_count("#bits=abc\n");
    CHECK_THROWS_AS(read_bits(bad_count, BitFormat::ascii), FormatError);
    CHECK_THROWS_AS(parse_bit_format("hex"), UsageError);
}

#pragma once

#include <cstddef>
#include <string>

#include "qxor/bitstring.hpp"
#include "qxor/config.hpp"

namespace qxor {

struct ExtractionOutput {
    BitString bits;
    std::size_t consumed = 0;   // input positions read
    std::size_t discarded = 0;  // symbols dropped (rejected pairs and odd leftovers)
};

struct StreamCounts {
    std::size_t consumed = 0;
    std::size_t produced = 0;
    std::size_t discarded = 0;
};

// z_i = x_i ^ y_{i+j}, i = 0 .. |x|-j-1. Requires |x| == |y| and j < |x|.
BitString xor_offset(const BitString &x, const BitString &y, std::size_t j);

// 01 -> 0, 10 -> 1, 00 and 11 dropped. A trailing odd bit is dropped.
ExtractionOutput von_neumann(const BitString &z);

// Iterated von Neumann extraction:
//   peres_d(z) = vn(z) || peres_{d-1}(u) || peres_{d-1}(v)
// where u holds the XOR of every input pair and v the common value of every
// equal pair. peres_1 is von_neumann.
ExtractionOutput peres(const BitString &z, std::size_t depth = 4);

// Two-string debiaser over consecutive positions (a1 a2 from x, b1 b2 from
// y): emits 0 if a1b1 < a2b2 and 1 if a1b1 > a2b2 as 2-bit numbers, nothing
// if they are equal.
ExtractionOutput pair_von_neumann(const BitString &x, const BitString &y);

// Expected pair_von_neumann output bits per input position for i.i.d.
// coincidences: (1 - sum_c P(c)^2) / 2 over the four joint outcomes c.
// Equals 3/8 for the uniform pair law and is smaller otherwise.
double pair_von_neumann_yield(const QrngConfig &cfg);

// Streaming counterparts. Each keeps the carry needed to make the output
// independent of how the input is split into chunks; finish() flushes it
// and returns any remaining output.

class XorOffsetStream {
public:
    explicit XorOffsetStream(std::size_t j) : skip_(j) {}
    // x and y chunks must have equal length.
    BitString feed(const BitString &x, const BitString &y);
    StreamCounts counts() const;

private:
    BitString pending_;
    std::size_t head_ = 0;
    std::size_t skip_;
    std::size_t consumed_ = 0;
    std::size_t produced_ = 0;
};

class VonNeumannStream {
public:
    BitString feed(const BitString &z);
    BitString finish();
    StreamCounts counts() const;

private:
    bool has_carry_ = false;
    bool carry_ = false;
    std::size_t consumed_ = 0;
    std::size_t produced_ = 0;
    std::size_t discarded_ = 0;
};

// Applies peres() to consecutive blocks of block_bits input bits.
class PeresStream {
public:
    PeresStream(std::size_t depth, std::size_t block_bits);
    BitString feed(const BitString &z);
    BitString finish();
    StreamCounts counts() const;

private:
    BitString run_block(const BitString &block);

    std::size_t depth_;
    std::size_t block_bits_;
    BitString buffer_;
    std::size_t consumed_ = 0;
    std::size_t produced_ = 0;
    std::size_t discarded_ = 0;
};

class PairVonNeumannStream {
public:
    BitString feed(const BitString &x, const BitString &y);
    BitString finish();
    StreamCounts counts() const;

private:
    bool has_carry_ = false;
    int carry_ = 0;  // 2 * a1 + b1
    std::size_t consumed_ = 0;
    std::size_t produced_ = 0;
    std::size_t discarded_ = 0;
};

}  // namespace qxor

#include "qxor/extractors.hpp"

#include "qxor/errors.hpp"
#include "qxor/exact.hpp"

namespace qxor {

namespace {

void peres_into(const BitString &in, std::size_t depth, BitString &out, std::size_t &discarded) {
    BitString parity;
    BitString equal_values;
    const std::size_t pairs = in.size() / 2;
    if (depth > 1) {
        parity.reserve(pairs);
        equal_values.reserve(pairs);
    }
    std::size_t equal = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const bool a = in[2 * i];
        const bool b = in[2 * i + 1];
        if (a != b) {
            out.push_back(a);
        } else {
            ++equal;
            if (depth > 1) {
                equal_values.push_back(a);
            }
        }
        if (depth > 1) {
            parity.push_back(a != b);
        }
    }
    discarded += in.size() % 2;
    if (depth <= 1) {
        discarded += 2 * equal;
        return;
    }
    peres_into(parity, depth - 1, out, discarded);
    peres_into(equal_values, depth - 1, out, discarded);
}

}  // namespace

BitString xor_offset(const BitString &x, const BitString &y, std::size_t j) {
    if (x.size() != y.size()) {
        throw UsageError("xor_offset: strings differ in length");
    }
    if (j >= x.size()) {
        throw UsageError("xor_offset: offset must be smaller than the input length");
    }
    const std::size_t n = x.size() - j;
    return x.slice(0, n) ^ y.slice(j, n);
}

ExtractionOutput von_neumann(const BitString &z) { return peres(z, 1); }

ExtractionOutput peres(const BitString &z, std::size_t depth) {
    if (depth == 0) {
        throw UsageError("peres: depth must be >= 1");
    }
    ExtractionOutput out;
    out.consumed = z.size();
    peres_into(z, depth, out.bits, out.discarded);
    return out;
}

ExtractionOutput pair_von_neumann(const BitString &x, const BitString &y) {
    if (x.size() != y.size()) {
        throw UsageError("pair_von_neumann: strings differ in length");
    }
    PairVonNeumannStream stream;
    ExtractionOutput out;
    out.bits = stream.feed(x, y);
    out.bits.append(stream.finish());
    const auto s = stream.counts();
    out.consumed = s.consumed;
    out.discarded = s.discarded;
    return out;
}

double pair_von_neumann_yield(const QrngConfig &cfg) {
    double collide = 0.0;
    for (int c = 0; c < 4; ++c) {
        const double p = pair_prob(c & 2, c & 1, cfg);
        collide += p * p;
    }
    return 0.5 * (1.0 - collide);
}

BitString XorOffsetStream::feed(const BitString &x, const BitString &y) {
    if (x.size() != y.size()) {
        throw UsageError("xor stream: chunk lengths differ");
    }
    pending_.append(x);
    consumed_ += x.size();
    BitString out;
    out.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (skip_ > 0) {
            --skip_;
            continue;
        }
        out.push_back(pending_[head_++] != y[i]);
    }
    if (head_ >= 4096) {
        pending_ = pending_.slice(head_, pending_.size() - head_);
        head_ = 0;
    }
    produced_ += out.size();
    return out;
}

StreamCounts XorOffsetStream::counts() const { return {consumed_, produced_, consumed_ - produced_}; }

BitString VonNeumannStream::feed(const BitString &z) {
    BitString out;
    consumed_ += z.size();
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!has_carry_) {
            carry_ = z[i];
            has_carry_ = true;
            continue;
        }
        has_carry_ = false;
        if (carry_ != z[i]) {
            out.push_back(carry_);
        } else {
            discarded_ += 2;
        }
    }
    produced_ += out.size();
    return out;
}

BitString VonNeumannStream::finish() {
    if (has_carry_) {
        has_carry_ = false;
        ++discarded_;
    }
    return {};
}

StreamCounts VonNeumannStream::counts() const { return {consumed_, produced_, discarded_}; }

PeresStream::PeresStream(std::size_t depth, std::size_t block_bits) : depth_(depth), block_bits_(block_bits) {
    if (depth == 0) {
        throw UsageError("peres: depth must be >= 1");
    }
    if (block_bits == 0 || block_bits % 2 != 0) {
        throw UsageError("peres: block size must be a positive even number");
    }
}

BitString PeresStream::run_block(const BitString &block) {
    auto r = peres(block, depth_);
    discarded_ += r.discarded;
    produced_ += r.bits.size();
    return r.bits;
}

BitString PeresStream::feed(const BitString &z) {
    consumed_ += z.size();
    buffer_.append(z);
    BitString out;
    std::size_t pos = 0;
    while (buffer_.size() - pos >= block_bits_) {
        out.append(run_block(buffer_.slice(pos, block_bits_)));
        pos += block_bits_;
    }
    if (pos > 0) {
        buffer_ = buffer_.slice(pos, buffer_.size() - pos);
    }
    return out;
}

BitString PeresStream::finish() {
    BitString out = run_block(buffer_);
    buffer_.clear();
    return out;
}

StreamCounts PeresStream::counts() const { return {consumed_, produced_, discarded_}; }

BitString PairVonNeumannStream::feed(const BitString &x, const BitString &y) {
    if (x.size() != y.size()) {
        throw UsageError("pair_von_neumann: chunk lengths differ");
    }
    consumed_ += x.size();
    BitString out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int v = 2 * static_cast<int>(x[i]) + static_cast<int>(y[i]);
        if (!has_carry_) {
            carry_ = v;
            has_carry_ = true;
            continue;
        }
        has_carry_ = false;
        if (carry_ < v) {
            out.push_back(false);
        } else if (carry_ > v) {
            out.push_back(true);
        } else {
            discarded_ += 2;
        }
    }
    produced_ += out.size();
    return out;
}

BitString PairVonNeumannStream::finish() {
    if (has_carry_) {
        has_carry_ = false;
        ++discarded_;
    }
    return {};
}

StreamCounts PairVonNeumannStream::counts() const { return {consumed_, produced_, discarded_}; }

}  // namespace qxor

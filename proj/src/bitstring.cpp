#include "qxor/bitstring.hpp"

#include <bit>

#include "qxor/errors.hpp"

namespace qxor {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

}  // namespace

BitString::BitString(std::size_t n, bool value)
    : words_(word_count(n), value ? ~std::uint64_t{0} : 0), size_(n) {
    if (value && (n & 63)) {
        words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
    }
}

BitString BitString::from_string(std::string_view text) {
    BitString out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw FormatError(std::string("invalid bit character '") + c + "'");
        }
        out.push_back(c == '1');
    }
    return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t n) {
    if (n > 64) {
        throw UsageError("from_uint: width exceeds 64 bits");
    }
    BitString out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((value >> (n - 1 - i)) & 1u) {
            out.set(i, true);
        }
    }
    return out;
}

BitString BitString::from_bools(std::span<const std::uint8_t> bits) {
    BitString out;
    out.reserve(bits.size());
    for (auto b : bits) {
        out.push_back(b != 0);
    }
    return out;
}

BitString BitString::from_words(std::vector<std::uint64_t> words, std::size_t n) {
    if (words.size() != word_count(n)) {
        throw UsageError("from_words: word count does not match length");
    }
    BitString out;
    out.words_ = std::move(words);
    out.size_ = n;
    if (n & 63) {
        out.words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
    }
    return out;
}

bool BitString::at(std::size_t i) const {
    if (i >= size_) {
        throw UsageError("BitString index out of range");
    }
    return (*this)[i];
}

void BitString::set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void BitString::push_back(bool value) {
    if ((size_ & 63) == 0) {
        words_.push_back(0);
    }
    if (value) {
        words_.back() |= std::uint64_t{1} << (size_ & 63);
    }
    ++size_;
}

void BitString::append(const BitString &other) {
    if ((size_ & 63) == 0) {
        words_.insert(words_.end(), other.words_.begin(), other.words_.end());
        size_ += other.size_;
        return;
    }
    for (std::size_t i = 0; i < other.size_; ++i) {
        push_back(other[i]);
    }
}

void BitString::clear() {
    words_.clear();
    size_ = 0;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
    if (pos > size_ || len > size_ - pos) {
        throw UsageError("BitString slice out of range");
    }
    BitString out(len);
    const std::size_t shift = pos & 63;
    const std::size_t base = pos >> 6;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        std::uint64_t lo = words_[base + w] >> shift;
        if (shift && base + w + 1 < words_.size()) {
            lo |= words_[base + w + 1] << (64 - shift);
        }
        out.words_[w] = lo;
    }
    if (len & 63) {
        out.words_.back() &= (std::uint64_t{1} << (len & 63)) - 1;
    }
    return out;
}

std::size_t BitString::count(bool value) const {
    std::size_t ones = 0;
    for (auto w : words_) {
        ones += static_cast<std::size_t>(std::popcount(w));
    }
    return value ? ones : size_ - ones;
}

std::string BitString::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if ((*this)[i]) {
            out[i] = '1';
        }
    }
    return out;
}

std::uint64_t BitString::to_uint() const {
    if (size_ > 64) {
        throw UsageError("to_uint: string longer than 64 bits");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < size_; ++i) {
        v = (v << 1) | static_cast<std::uint64_t>((*this)[i]);
    }
    return v;
}

BitString operator^(const BitString &x, const BitString &y) {
    if (x.size() != y.size()) {
        throw UsageError("xor of strings with different lengths");
    }
    auto xw = x.words();
    auto yw = y.words();
    std::vector<std::uint64_t> words(xw.size());
    for (std::size_t w = 0; w < xw.size(); ++w) {
        words[w] = xw[w] ^ yw[w];
    }
    return BitString::from_words(std::move(words), x.size());
}

BitString concat(const BitString &x, const BitString &y) {
    BitString out = x;
    out.append(y);
    return out;
}

BitString complement(const BitString &x) {
    std::vector<std::uint64_t> words(x.words().begin(), x.words().end());
    for (auto &w : words) {
        w = ~w;
    }
    return BitString::from_words(std::move(words), x.size());
}

std::size_t hamming_distance(const BitString &x, const BitString &y) {
    if (x.size() != y.size()) {
        throw UsageError("hamming_distance: length mismatch");
    }
    std::size_t d = 0;
    auto xw = x.words();
    auto yw = y.words();
    for (std::size_t w = 0; w < xw.size(); ++w) {
        d += static_cast<std::size_t>(std::popcount(xw[w] ^ yw[w]));
    }
    return d;
}

}  // namespace qxor

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qxor {

// Finite bit sequence, packed into 64-bit words.
//
// Index 0 is the leftmost symbol (the most significant one when the string
// is read as a binary number), so from_uint(174, 10) is "0010101110".
// Internally bit i lives in words_[i / 64] at bit position i % 64; padding
// bits past size() are always zero.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, bool value = false);

    // Parses ASCII '0'/'1'. Any other character throws FormatError.
    static BitString from_string(std::string_view text);
    // Zero-extended n-bit binary representation of value (n <= 64).
    static BitString from_uint(std::uint64_t value, std::size_t n);
    static BitString from_bools(std::span<const std::uint8_t> bits);
    // Adopts packed words (layout as described above); padding is cleared.
    static BitString from_words(std::vector<std::uint64_t> words, std::size_t n);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    bool at(std::size_t i) const;
    void set(std::size_t i, bool value);
    void push_back(bool value);
    void append(const BitString &other);
    void reserve(std::size_t n) { words_.reserve((n + 63) / 64); }
    void clear();

    BitString slice(std::size_t pos, std::size_t len) const;

    // Number of bits equal to value.
    std::size_t count(bool value) const;

    std::string to_string() const;
    // Inverse of from_uint; requires size() <= 64.
    std::uint64_t to_uint() const;

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const BitString &a, const BitString &b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

// Bitwise exclusive or of equal-length strings.
BitString operator^(const BitString &x, const BitString &y);
BitString concat(const BitString &x, const BitString &y);
BitString complement(const BitString &x);

// Number of positions where x and y differ. Throws UsageError on length mismatch.
std::size_t hamming_distance(const BitString &x, const BitString &y);

// #_b(x): number of occurrences of b in x.
inline std::size_t count_bits(const BitString &x, bool b) { return x.count(b); }

}  // namespace qxor

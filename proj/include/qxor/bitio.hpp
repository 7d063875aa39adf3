#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qxor/bitstring.hpp"

namespace qxor {

// Bit file formats.
//
// ascii:  a header line "#bits=<n>" followed by n characters '0'/'1'.
//         Line breaks in the body are ignored.
// packed: raw bytes, bit i stored in byte i / 8 at bit position i % 8
//         (least significant bit first). The length is 8 * file size unless
//         the caller supplies a bit count; unused trailing bits are zero.
enum class BitFormat { ascii, packed, automatic };

BitFormat parse_bit_format(std::string_view name);

void write_bits(std::ostream &out, const BitString &bits, BitFormat format);

// Incremental reader; throws FormatError on malformed input.
class BitReader {
public:
    // limit caps the number of bits returned (packed files only need it when
    // the bit count is not a multiple of 8).
    BitReader(std::istream &in, BitFormat format, std::optional<std::size_t> limit = std::nullopt);

    // Returns up to max_bits bits, or an empty string at end of input.
    BitString next(std::size_t max_bits);
    BitFormat format() const { return format_; }

private:
    std::istream &in_;
    BitFormat format_;
    std::optional<std::size_t> remaining_;
    std::size_t read_ = 0;
};

BitString read_bits(std::istream &in, BitFormat format, std::optional<std::size_t> limit = std::nullopt);
BitString read_bits_file(const std::string &path, BitFormat format, std::optional<std::size_t> limit = std::nullopt);

}  // namespace qxor

#include "qxor/bitio.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "qxor/errors.hpp"

namespace qxor {

namespace {

constexpr std::string_view kHeader = "#bits=";

}  // namespace

BitFormat parse_bit_format(std::string_view name) {
    if (name == "ascii") {
        return BitFormat::ascii;
    }
    if (name == "packed") {
        return BitFormat::packed;
    }
    if (name == "auto") {
        return BitFormat::automatic;
    }
    throw UsageError("unknown bit format '" + std::string(name) + "' (ascii, packed, auto)");
}

void write_bits(std::ostream &out, const BitString &bits, BitFormat format) {
    if (format == BitFormat::packed) {
        std::vector<char> bytes((bits.size() + 7) / 8, 0);
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i]) {
                bytes[i / 8] = static_cast<char>(bytes[i / 8] | (1 << (i % 8)));
            }
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        return;
    }
    out << kHeader << bits.size() << '\n';
    constexpr std::size_t kLine = 64;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out.put(bits[i] ? '1' : '0');
        if ((i + 1) % kLine == 0 || i + 1 == bits.size()) {
            out.put('\n');
        }
    }
}

BitReader::BitReader(std::istream &in, BitFormat format, std::optional<std::size_t> limit)
    : in_(in), format_(format), remaining_(limit) {
    if (format_ == BitFormat::automatic) {
        format_ = in_.peek() == '#' ? BitFormat::ascii : BitFormat::packed;
    }
    if (format_ != BitFormat::ascii) {
        return;
    }
    std::string line;
    if (!std::getline(in_, line) || line.rfind(kHeader, 0) != 0) {
        throw FormatError("ASCII bit file must start with '#bits=<n>'");
    }
    std::size_t declared = 0;
    try {
        std::size_t used = 0;
        declared = std::stoull(line.substr(kHeader.size()), &used);
        if (used != line.size() - kHeader.size()) {
            throw FormatError("bad header");
        }
    } catch (const std::exception &) {
        throw FormatError("malformed header line '" + line + "'");
    }
    if (!remaining_ || *remaining_ > declared) {
        remaining_ = declared;
    }
}

BitString BitReader::next(std::size_t max_bits) {
    std::size_t want = max_bits;
    if (remaining_) {
        want = std::min(want, *remaining_);
    }
    BitString out;
    if (want == 0) {
        return out;
    }
    out.reserve(want);
    if (format_ == BitFormat::ascii) {
        char c = 0;
        while (out.size() < want && in_.get(c)) {
            if (c == '0' || c == '1') {
                out.push_back(c == '1');
            } else if (c != '\n' && c != '\r') {
                throw FormatError(std::string("invalid character in bit file: '") + c + "'");
            }
        }
        if (out.size() < want && remaining_) {
            throw FormatError("bit file shorter than its header declares");
        }
    } else {
        // Only the final chunk may end inside a byte.
        if (want % 8 != 0 && (!remaining_ || want < *remaining_)) {
            want = std::max<std::size_t>(8, want - want % 8);
            if (remaining_) {
                want = std::min(want, *remaining_);
            }
        }
        const std::size_t byte_count = (want + 7) / 8;
        std::vector<char> bytes(byte_count);
        in_.read(bytes.data(), static_cast<std::streamsize>(byte_count));
        const auto got = static_cast<std::size_t>(in_.gcount());
        const std::size_t bits = std::min(want, got * 8);
        for (std::size_t i = 0; i < bits; ++i) {
            out.push_back((static_cast<unsigned char>(bytes[i / 8]) >> (i % 8)) & 1u);
        }
    }
    if (remaining_) {
        *remaining_ -= out.size();
    }
    read_ += out.size();
    return out;
}

BitString read_bits(std::istream &in, BitFormat format, std::optional<std::size_t> limit) {
    BitReader reader(in, format, limit);
    BitString all;
    for (;;) {
        BitString chunk = reader.next(std::size_t{1} << 20);
        if (chunk.empty()) {
            break;
        }
        all.append(chunk);
    }
    return all;
}

BitString read_bits_file(const std::string &path, BitFormat format, std::optional<std::size_t> limit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open bit file " + path);
    }
    return read_bits(in, format, limit);
}

}  // namespace qxor

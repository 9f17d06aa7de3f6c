#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubicprng {

/// Growable bit sequence stored packed, first bit in the most significant
/// position of byte 0.
class BitStream {
public:
    BitStream() = default;

    static BitStream from_string(std::string_view ascii);  // '0'/'1' only
    static BitStream from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);

    void push_back(bool bit) {
        if ((size_ & 7) == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (size_ & 7));
        ++size_;
    }

    bool operator[](std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    void reserve(std::size_t nbits) { bytes_.reserve((nbits + 7) / 8); }

    void append(const BitStream& other);
    /// Bits [from, size()).
    BitStream suffix(std::size_t from) const;
    BitStream complement() const;
    std::size_t count_ones() const;

    /// Packed bytes; unused low bits of the last byte are zero.
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::string to_string() const;

    friend bool operator==(const BitStream& x, const BitStream& y) {
        return x.size_ == y.size_ && x.bytes_ == y.bytes_;
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t size_ = 0;
};

struct PackedWords {
    std::vector<std::uint32_t> words;
    std::size_t dropped_bits = 0;  // trailing remainder shorter than one word
};

/// Word k holds bits 32k .. 32k+31, first bit most significant.
PackedWords pack_words(const BitStream& bits);

/// Inverse of pack_words.
BitStream unpack_words(std::span<const std::uint32_t> words);

}  // namespace cubicprng

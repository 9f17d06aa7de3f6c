#include "cubicprng/bitstream.hpp"

#include <bit>
#include <stdexcept>

namespace cubicprng {

BitStream BitStream::from_string(std::string_view ascii) {
    BitStream s;
    s.reserve(ascii.size());
    for (char ch : ascii) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bit string may only contain '0' and '1'");
        s.push_back(ch == '1');
    }
    return s;
}

BitStream BitStream::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits > bytes.size() * 8) throw std::invalid_argument("bit count exceeds byte buffer");
    BitStream s;
    s.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>((nbits + 7) / 8));
    s.size_ = nbits;
    if (nbits & 7) s.bytes_.back() &= static_cast<std::uint8_t>(0xFF00u >> (nbits & 7));
    return s;
}

void BitStream::append(const BitStream& other) {
    if ((size_ & 7) == 0) {
        bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
        size_ += other.size_;
        return;
    }
    reserve(size_ + other.size_);
    for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
}

BitStream BitStream::suffix(std::size_t from) const {
    BitStream s;
    if (from >= size_) return s;
    if ((from & 7) == 0) {
        return from_bytes(std::span(bytes_).subspan(from >> 3), size_ - from);
    }
    s.reserve(size_ - from);
    for (std::size_t i = from; i < size_; ++i) s.push_back((*this)[i]);
    return s;
}

BitStream BitStream::complement() const {
    BitStream s = *this;
    for (auto& byte : s.bytes_) byte = static_cast<std::uint8_t>(~byte);
    if (size_ & 7) s.bytes_.back() &= static_cast<std::uint8_t>(0xFF00u >> (size_ & 7));
    return s;
}

std::size_t BitStream::count_ones() const {
    std::size_t n = 0;
    for (auto byte : bytes_) n += static_cast<std::size_t>(std::popcount(byte));
    return n;
}

std::string BitStream::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if ((*this)[i]) out[i] = '1';
    return out;
}

PackedWords pack_words(const BitStream& bits) {
    PackedWords out;
    const std::size_t nwords = bits.size() / 32;
    out.dropped_bits = bits.size() % 32;
    out.words.resize(nwords);
    const auto& bytes = bits.bytes();
    for (std::size_t k = 0; k < nwords; ++k) {
        const std::uint8_t* p = bytes.data() + 4 * k;
        out.words[k] = (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
                       std::uint32_t{p[3]};
    }
    return out;
}

BitStream unpack_words(std::span<const std::uint32_t> words) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(words.size() * 4);
    for (auto w : words) {
        bytes.push_back(static_cast<std::uint8_t>(w >> 24));
        bytes.push_back(static_cast<std::uint8_t>(w >> 16));
        bytes.push_back(static_cast<std::uint8_t>(w >> 8));
        bytes.push_back(static_cast<std::uint8_t>(w));
    }
    return BitStream::from_bytes(bytes, words.size() * 32);
}

}  // namespace cubicprng

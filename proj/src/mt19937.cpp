#include "cubicprng/mt19937.hpp"

namespace cubicprng {

MtState::MtState(std::uint32_t seed) noexcept {
    mt_[0] = seed;
    for (std::size_t i = 1; i < kN; ++i)
        mt_[i] = 1812433253u * (mt_[i - 1] ^ (mt_[i - 1] >> 30)) + static_cast<std::uint32_t>(i);
}

void MtState::twist() noexcept {
    constexpr std::uint32_t kMatrixA = 0x9908b0dfu;
    constexpr std::uint32_t kUpper = 0x80000000u;
    constexpr std::uint32_t kLower = 0x7fffffffu;
    for (std::size_t k = 0; k < kN; ++k) {
        const std::uint32_t y = (mt_[k] & kUpper) | (mt_[(k + 1) % kN] & kLower);
        mt_[k] = mt_[(k + kM) % kN] ^ (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
    }
    pos_ = 0;
}

std::uint32_t MtState::next() noexcept {
    if (pos_ >= kN) twist();
    return mt_temper(mt_[pos_++]);
}

std::vector<std::uint32_t> mt_outputs(std::uint32_t seed, std::size_t count) {
    MtState st(seed);
    std::vector<std::uint32_t> out(count);
    for (auto& w : out) w = st.next();
    return out;
}

}  // namespace cubicprng

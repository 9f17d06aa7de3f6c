// MT19937 with the standard init_genrand seeding and output tempering.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cubicprng {

constexpr std::uint32_t kMtDefaultSeed = 5489u;

constexpr std::uint32_t mt_temper(std::uint32_t y) noexcept {
    y ^= y >> 11;
    y ^= (y << 7) & 0x9d2c5680u;
    y ^= (y << 15) & 0xefc60000u;
    y ^= y >> 18;
    return y;
}

constexpr std::uint32_t mt_untemper(std::uint32_t y) noexcept {
    y ^= y >> 18;
    y ^= (y << 15) & 0xefc60000u;
    // Each pass recovers 7 more low-order bits.
    std::uint32_t x = y;
    for (int i = 0; i < 4; ++i) x = y ^ ((x << 7) & 0x9d2c5680u);
    y = x;
    x = y;
    for (int i = 0; i < 2; ++i) x = y ^ (x >> 11);
    return x;
}

class MtState {
public:
    static constexpr std::size_t kN = 624;
    static constexpr std::size_t kM = 397;

    explicit MtState(std::uint32_t seed = kMtDefaultSeed) noexcept;

    std::uint32_t next() noexcept;
    std::size_t position() const noexcept { return pos_; }

private:
    void twist() noexcept;

    std::array<std::uint32_t, kN> mt_{};
    std::size_t pos_ = kN;
};

inline MtState mt_init(std::uint32_t seed) noexcept { return MtState(seed); }
inline std::uint32_t mt_next(MtState& st) noexcept { return st.next(); }

std::vector<std::uint32_t> mt_outputs(std::uint32_t seed, std::size_t count);

}  // namespace cubicprng

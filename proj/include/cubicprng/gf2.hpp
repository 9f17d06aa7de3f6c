// 32-bit vectors and 32x32 matrices over GF(2).
//
// Component 1 is the most significant bit of the word, so a 32-bit output
// y = (y_1, ..., y_32) reads left to right like its binary representation.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubicprng {

class Gf2Vector32 {
public:
    constexpr Gf2Vector32() = default;
    constexpr explicit Gf2Vector32(std::uint32_t w) : word_(w) {}

    constexpr std::uint32_t word() const noexcept { return word_; }
    /// Component i, 1-based from the most significant bit.
    constexpr int at(int i) const noexcept { return static_cast<int>((word_ >> (32 - i)) & 1u); }
    /// Integer value of components 1..8.
    constexpr unsigned top8() const noexcept { return word_ >> 24; }

    friend constexpr Gf2Vector32 operator^(Gf2Vector32 x, Gf2Vector32 y) { return Gf2Vector32(x.word_ ^ y.word_); }
    friend constexpr int dot(Gf2Vector32 x, Gf2Vector32 y) { return std::popcount(x.word_ & y.word_) & 1; }
    friend constexpr bool operator==(Gf2Vector32, Gf2Vector32) = default;

private:
    std::uint32_t word_ = 0;
};

class Gf2Matrix32 {
public:
    constexpr Gf2Matrix32() = default;

    /// Row i, 1-based.
    constexpr Gf2Vector32 row(int i) const noexcept { return Gf2Vector32(rows_[static_cast<std::size_t>(i - 1)]); }
    constexpr void set_row(int i, Gf2Vector32 r) noexcept { rows_[static_cast<std::size_t>(i - 1)] = r.word(); }
    constexpr int at(int i, int j) const noexcept { return row(i).at(j); }

    constexpr Gf2Vector32 operator*(Gf2Vector32 v) const noexcept {
        std::uint32_t out = 0;
        for (int i = 1; i <= 32; ++i) out |= static_cast<std::uint32_t>(dot(row(i), v)) << (32 - i);
        return Gf2Vector32(out);
    }

    /// 32 strings of '0'/'1', row-wise.
    std::vector<std::string> to_strings() const;
    static std::optional<Gf2Matrix32> from_strings(const std::vector<std::string>& rows);

    friend constexpr bool operator==(const Gf2Matrix32&, const Gf2Matrix32&) = default;

private:
    std::array<std::uint32_t, 32> rows_{};
};

/// Incremental row echelon form for systems in 64 unknowns with 32
/// simultaneous right-hand sides (one per output row being solved for).
class Gf2System64 {
public:
    /// Adds coeffs . x = rhs; returns true if the rank grew.
    bool add(std::uint64_t coeffs, std::uint32_t rhs);
    int rank() const noexcept { return rank_; }
    /// Count of added equations that reduced to 0 = nonzero.
    std::uint64_t inconsistencies() const noexcept { return inconsistent_; }

    /// Unknown k's value for each of the 32 right-hand sides (bit 31 = first
    /// rhs); requires full rank.
    std::array<std::uint32_t, 64> solve() const;

private:
    std::array<std::uint64_t, 64> coeffs_{};
    std::array<std::uint32_t, 64> rhs_{};
    std::array<bool, 64> used_{};
    int rank_ = 0;
    std::uint64_t inconsistent_ = 0;
};

}  // namespace cubicprng

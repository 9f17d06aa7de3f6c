// Fast orbit stepping on fixed-width two's-complement limb arrays.
//
// Each step is one fused pass over the coefficient limbs (shifts by 1-3 bits
// and additions with carry, no multiplication). The branch is normally
// decided from the top two limbs alone; the exact full-width sign is only
// computed when the truncated estimate cannot settle it.
//
// Invariant between steps: the top limb of every array is pure sign
// extension of the limb below it, which leaves at least 64 bits of headroom
// for the next step (a step grows |coefficients| by at most 4 bits).
#pragma once

#include "cubicprng/triple.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cubicprng {

class LimbOrbit {
public:
    explicit LimbOrbit(const CoeffTriple& t);

    /// Advances one step, returning the emitted bit. Throws HalfRoot if the
    /// state is corrupt.
    int step();

    CoeffTriple triple() const;

    /// Bit length of max(|b|, |c|, |d|).
    std::size_t coefficient_bits() const;
    /// coefficient_bits() > limit, usually answered from array lengths alone.
    bool exceeds_bits(std::size_t limit) const;

    std::size_t limbs() const noexcept { return c_.size(); }
    /// Steps where the top-limb estimate was inconclusive.
    std::uint64_t exact_sign_fallbacks() const noexcept { return fallbacks_; }

private:
    bool decide_right();
    int exact_half_sign() const;
    void left_pass();
    void right_pass();
    void restore_headroom();

    std::vector<std::uint64_t> b_;
    std::vector<std::uint64_t> c_;  // c_ and d_ always share a length
    std::vector<std::uint64_t> d_;
    std::uint64_t fallbacks_ = 0;
};

}  // namespace cubicprng

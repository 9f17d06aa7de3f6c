// Several steps of the triple map at once.
//
// If m = floor(2^j alpha), then 2^j alpha - m has the triple
//     b' = 2^j b + 3m
//     c' = 4^j c + 2^(j+1) b m + 3m^2
//     d' = 8^j d + 4^j c m + 2^j b m^2 + m^3,
// which is what j single steps produce. The cubic is increasing on [0, 1],
// so a candidate m is right exactly when d' < 0 and 1 + b' + c' + d' > 0.
// Once c dwarfs b, alpha = -d/c to within 2^-(bits(c) - bits(b)), which
// predicts m from the leading limbs of c and d.
#pragma once

#include "cubicprng/bitstream.hpp"
#include "cubicprng/triple.hpp"

#include <cstdint>

namespace cubicprng {

class BlockOrbit {
public:
    static constexpr unsigned kMaxBlock = 1024;

    explicit BlockOrbit(const CoeffTriple& t);

    /// Advances j (1..kMaxBlock) steps and appends their bits to out.
    /// Returns false and leaves both alone when the prediction cannot be
    /// made or fails verification.
    bool jump(unsigned j, BitStream& out);

    /// One exact step.
    int step();

    CoeffTriple triple() const;
    std::size_t coefficient_bits() const;

private:
    bool predict(unsigned j);

    mpz_class b_, c_, d_;
    mpz_class nb_, nc_, nd_, m1_, m2_, m3_, tmp_;
};

}  // namespace cubicprng

#pragma once

#include "cubicprng/bitstream.hpp"
#include "cubicprng/triple.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace testing {

inline cubicprng::CoeffTriple T(long b, long c, long d) {
    return cubicprng::CoeffTriple::validate(cubicprng::BigInt(b), cubicprng::BigInt(c), cubicprng::BigInt(d));
}

inline std::string hex_to_bits(std::string_view hex) {
    std::string out;
    for (char h : hex) {
        const int v = h <= '9' ? h - '0' : h - 'a' + 10;
        for (int k = 3; k >= 0; --k) out += ((v >> k) & 1) ? '1' : '0';
    }
    return out;
}

// Uniform admissible seed with |b| <= bmax and c <= b^2/3 + cspan.
inline cubicprng::CoeffTriple random_seed(std::mt19937_64& rng, long bmax = 20, long cspan = 60) {
    std::uniform_int_distribution<long> bd(-bmax, bmax);
    for (;;) {
        const long b = bd(rng);
        const long cmin = std::max((b * b + 2) / 3, 1 - b);
        const long c = std::uniform_int_distribution<long>(cmin, cmin + cspan)(rng);
        if (b + c < 1) continue;
        const long d = std::uniform_int_distribution<long>(-(b + c), -1)(rng);
        return T(b, c, d);
    }
}

}  // namespace testing

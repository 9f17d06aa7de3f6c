// Certified bisection for the root of x^3 + b x^2 + c x + d on dyadic points.
//
// All evaluation is integer-only: for x = p / 2^e the sign of f(x) equals
// the sign of p^3 + b p^2 2^e + c p 4^e + d 8^e.
#pragma once

#include "cubicprng/triple.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cubicprng {

/// numerator / 2^exponent, kept canonical (odd numerator or exponent 0).
class DyadicRational {
public:
    DyadicRational() = default;
    DyadicRational(BigInt numerator, std::uint64_t exponent);

    const BigInt& numerator() const noexcept { return num_; }
    std::uint64_t exponent() const noexcept { return exp_; }

    /// Numerator when written over 2^e, e >= exponent().
    BigInt scaled_to(std::uint64_t e) const;

    /// Decimal expansion truncated toward -infinity to `digits` places.
    std::string to_decimal(unsigned digits) const;
    double to_double() const;

    friend DyadicRational operator-(const DyadicRational& x, const DyadicRational& y);
    friend DyadicRational operator+(const DyadicRational& x, const DyadicRational& y);
    friend DyadicRational operator*(const DyadicRational& x, const BigInt& k);
    friend int compare(const DyadicRational& x, const DyadicRational& y);
    friend bool operator==(const DyadicRational& x, const DyadicRational& y) {
        return x.exp_ == y.exp_ && x.num_ == y.num_;
    }
    friend bool operator<(const DyadicRational& x, const DyadicRational& y) { return compare(x, y) < 0; }

private:
    BigInt num_ = 0;
    std::uint64_t exp_ = 0;
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

Sign poly_sign_at_dyadic(const CoeffTriple& t, const DyadicRational& x);

class CorruptState : public std::runtime_error {
public:
    explicit CorruptState(const std::string& what) : std::runtime_error(what) {}
};

/// [lo, hi) with f(lo) < 0 < f(hi); width 2^-depth.
struct RootInterval {
    DyadicRational lo;
    DyadicRational hi;
    CoeffTriple triple;
    std::uint64_t depth = 0;

    /// Midpoint to `digits` decimals with the certified half-width bound.
    std::string to_string(unsigned digits = 20) const;
};

struct IsolatedBits {
    std::string bits;  // '0'/'1'
    RootInterval interval;
};

/// k bisection steps from [0, 1); bit i is 1 iff the root lies in the upper
/// half at depth i+1. Throws CorruptState on an exact zero at a midpoint.
IsolatedBits isolate_root_bits(const CoeffTriple& t, std::uint64_t k);

/// Interval of width 2^-eps_exponent containing the root; eps_exponent >= 1.
RootInterval refine_to_resolution(const CoeffTriple& t, std::uint64_t eps_exponent);

}  // namespace cubicprng

#include "cubicprng/limb_orbit.hpp"

#include <algorithm>
#include <bit>

namespace cubicprng {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

constexpr u64 fill_of(u64 top) noexcept { return (top >> 63) ? ~u64{0} : u64{0}; }

std::size_t magnitude_limbs(const BigInt& x) {
    return (mpz_sizeinbase(x.get_mpz_t(), 2) + 63) / 64;
}

void negate(std::vector<u64>& x) {
    u64 carry = 1;
    for (auto& limb : x) {
        const u128 s = static_cast<u128>(~limb) + carry;
        limb = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
}

std::vector<u64> to_limbs(const BigInt& x, std::size_t len) {
    std::vector<u64> out(len, 0);
    std::size_t count = 0;
    mpz_export(out.data(), &count, -1, sizeof(u64), 0, 0, x.get_mpz_t());
    if (sgn(x) < 0) negate(out);
    return out;
}

BigInt from_limbs(std::vector<u64> x) {
    const bool negative = (x.back() >> 63) != 0;
    if (negative) negate(x);
    BigInt out;
    mpz_import(out.get_mpz_t(), x.size(), -1, sizeof(u64), 0, 0, x.data());
    if (negative) out = -out;
    return out;
}

std::size_t magnitude_bits(const std::vector<u64>& x) {
    const bool negative = (x.back() >> 63) != 0;
    const u64 fill = fill_of(x.back());
    std::size_t j = x.size();
    while (j > 0 && x[j - 1] == fill) --j;
    if (j == 0) return negative ? 1 : 0;
    const u64 top = negative ? ~x[j - 1] : x[j - 1];
    const auto width = static_cast<std::size_t>(std::bit_width(top));
    std::size_t bits = 64 * (j - 1) + width;
    if (negative) {
        // |x| = ~x + 1 gains a bit exactly when ~x = 2^bits - 1.
        const bool ones_top = width == 64 ? top == ~u64{0} : top == (u64{1} << width) - 1;
        const bool ones_below = std::all_of(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(j - 1),
                                            [](u64 limb) { return limb == 0; });
        if (ones_top && ones_below) ++bits;
    }
    return bits;
}

bool lacks_headroom(const std::vector<u64>& x) {
    return x.back() != fill_of(x[x.size() - 2]);
}

// Value of floor(x / 2^(64 i)) restricted to limbs i, i+1.
i128 top_two(const std::vector<u64>& x, std::size_t i) {
    const u64 fill = fill_of(x.back());
    const u64 lo = i < x.size() ? x[i] : fill;
    const u64 hi = i + 1 < x.size() ? x[i + 1] : fill;
    return static_cast<i128>(static_cast<std::int64_t>(hi)) * (static_cast<i128>(1) << 64) + static_cast<i128>(lo);
}

}  // namespace

LimbOrbit::LimbOrbit(const CoeffTriple& t) {
    const std::size_t lb = magnitude_limbs(t.b()) + 2;
    const std::size_t lcd = std::max({magnitude_limbs(t.c()), magnitude_limbs(t.d()), lb - 2}) + 2;
    b_ = to_limbs(t.b(), lb);
    c_ = to_limbs(t.c(), lcd);
    d_ = to_limbs(t.d(), lcd);
}

CoeffTriple LimbOrbit::triple() const {
    return CoeffTriple::trusted(from_limbs(b_), from_limbs(c_), from_limbs(d_));
}

std::size_t LimbOrbit::coefficient_bits() const {
    return std::max({magnitude_bits(b_), magnitude_bits(c_), magnitude_bits(d_)});
}

bool LimbOrbit::exceeds_bits(std::size_t limit) const {
    // Headroom bounds every magnitude by 2^(64 (L-1) - 1).
    if (64 * (c_.size() - 1) <= limit) return false;
    return coefficient_bits() > limit;
}

int LimbOrbit::step() {
    const bool right = decide_right();
    if (right)
        right_pass();
    else
        left_pass();
    restore_headroom();
    return right ? 1 : 0;
}

bool LimbOrbit::decide_right() {
    // With x = X 2^k + r (0 <= r < 2^k, k = 64 (L-2)) for each coefficient,
    // 1 + 2b + 4c + 8d = S 2^k + R where S = 2Xb + 4Xc + 8Xd and
    // 1 <= R <= 14 (2^k - 1) + 1. So S >= 0 forces a positive sign and
    // S <= -14 a negative one.
    const std::size_t k = c_.size() - 2;
    const i128 s = 2 * top_two(b_, k) + 4 * top_two(c_, k) + 8 * top_two(d_, k);
    if (s >= 0) return false;
    if (s <= -14) return true;
    ++fallbacks_;
    const int sign = exact_half_sign();
    if (sign == 0) throw HalfRoot();
    return sign < 0;
}

int LimbOrbit::exact_half_sign() const {
    const std::size_t L = c_.size();
    const u64 bfill = fill_of(b_.back());
    u64 pb = 0, pc = 0, pd = 0, carry = 1, any = 0, last = 0;
    for (std::size_t i = 0; i < L; ++i) {
        const u64 bi = i < b_.size() ? b_[i] : bfill;
        const u64 ci = c_[i], di = d_[i];
        const u64 b2 = (bi << 1) | (pb >> 63);
        const u64 c4 = (ci << 2) | (pc >> 62);
        const u64 d8 = (di << 3) | (pd >> 61);
        const u128 s = static_cast<u128>(b2) + c4 + d8 + carry;
        last = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
        any |= last;
        pb = bi;
        pc = ci;
        pd = di;
    }
    if (any == 0) return 0;
    return (last >> 63) ? -1 : 1;
}

void LimbOrbit::left_pass() {
    u64 prev = 0;
    for (auto& limb : b_) {
        const u64 cur = limb;
        limb = (cur << 1) | (prev >> 63);
        prev = cur;
    }
    u64 pc = 0, pd = 0;
    u64* c = c_.data();
    u64* d = d_.data();
    const std::size_t L = c_.size();
    for (std::size_t i = 0; i < L; ++i) {
        const u64 ci = c[i], di = d[i];
        c[i] = (ci << 2) | (pc >> 62);
        d[i] = (di << 3) | (pd >> 61);
        pc = ci;
        pd = di;
    }
}

void LimbOrbit::right_pass() {
    // d' = 2b + 4c + 8d + 1, c' = 4b + 4c + 3, b' = 2b + 3, computed low to
    // high in place; the constants enter as initial carries.
    const std::size_t L = c_.size();
    const std::size_t Lb = b_.size();
    u64* b = b_.data();
    u64* c = c_.data();
    u64* d = d_.data();
    u64 pb = 0, pc = 0, pd = 0;
    u64 kd = 1, kc = 3, kb = 3;
    std::size_t i = 0;
    for (; i < Lb; ++i) {
        const u64 bi = b[i], ci = c[i], di = d[i];
        const u64 b2 = (bi << 1) | (pb >> 63);
        const u64 b4 = (bi << 2) | (pb >> 62);
        const u64 c4 = (ci << 2) | (pc >> 62);
        const u64 d8 = (di << 3) | (pd >> 61);
        const u128 sd = static_cast<u128>(b2) + c4 + d8 + kd;
        const u128 sc = static_cast<u128>(b4) + c4 + kc;
        const u128 sb = static_cast<u128>(b2) + kb;
        d[i] = static_cast<u64>(sd);
        c[i] = static_cast<u64>(sc);
        b[i] = static_cast<u64>(sb);
        kd = static_cast<u64>(sd >> 64);
        kc = static_cast<u64>(sc >> 64);
        kb = static_cast<u64>(sb >> 64);
        pb = bi;
        pc = ci;
        pd = di;
    }
    const u64 bfill = fill_of(pb);
    for (; i < L; ++i) {
        const u64 ci = c[i], di = d[i];
        const u64 b2 = (bfill << 1) | (pb >> 63);
        const u64 b4 = (bfill << 2) | (pb >> 62);
        const u64 c4 = (ci << 2) | (pc >> 62);
        const u64 d8 = (di << 3) | (pd >> 61);
        const u128 sd = static_cast<u128>(b2) + c4 + d8 + kd;
        const u128 sc = static_cast<u128>(b4) + c4 + kc;
        d[i] = static_cast<u64>(sd);
        c[i] = static_cast<u64>(sc);
        kd = static_cast<u64>(sd >> 64);
        kc = static_cast<u64>(sc >> 64);
        pb = bfill;
        pc = ci;
        pd = di;
    }
}

void LimbOrbit::restore_headroom() {
    if (lacks_headroom(b_)) b_.push_back(fill_of(b_.back()));
    if (lacks_headroom(c_) || lacks_headroom(d_) || b_.size() > c_.size()) {
        c_.push_back(fill_of(c_.back()));
        d_.push_back(fill_of(d_.back()));
    }
}

}  // namespace cubicprng

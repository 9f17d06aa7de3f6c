#include "cubicprng/exact_roots.hpp"

#include <algorithm>
#include <cmath>

namespace cubicprng {

DyadicRational::DyadicRational(BigInt numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
    if (sgn(num_) == 0) {
        exp_ = 0;
        return;
    }
    const auto tz = mpz_scan1(num_.get_mpz_t(), 0);
    const auto shift = std::min<std::uint64_t>(tz, exp_);
    if (shift > 0) {
        mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
        exp_ -= shift;
    }
}

BigInt DyadicRational::scaled_to(std::uint64_t e) const {
    BigInt out = num_;
    if (e > exp_) out <<= static_cast<mp_bitcnt_t>(e - exp_);
    return out;
}

DyadicRational operator-(const DyadicRational& x, const DyadicRational& y) {
    const auto e = std::max(x.exp_, y.exp_);
    return DyadicRational(x.scaled_to(e) - y.scaled_to(e), e);
}

DyadicRational operator+(const DyadicRational& x, const DyadicRational& y) {
    const auto e = std::max(x.exp_, y.exp_);
    return DyadicRational(x.scaled_to(e) + y.scaled_to(e), e);
}

DyadicRational operator*(const DyadicRational& x, const BigInt& k) {
    return DyadicRational(x.num_ * k, x.exp_);
}

int compare(const DyadicRational& x, const DyadicRational& y) {
    const auto e = std::max(x.exp_, y.exp_);
    return cmp(x.scaled_to(e), y.scaled_to(e));
}

std::string DyadicRational::to_decimal(unsigned digits) const {
    BigInt pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, digits);
    BigInt scaled = num_ * pow10;
    BigInt q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), scaled.get_mpz_t(), exp_);
    const bool negative = sgn(q) < 0;
    if (negative) q = -q;
    BigInt ipart, fpart;
    mpz_fdiv_qr(ipart.get_mpz_t(), fpart.get_mpz_t(), q.get_mpz_t(), pow10.get_mpz_t());
    std::string frac = fpart.get_str();
    frac.insert(0, digits - std::min<std::size_t>(digits, frac.size()), '0');
    std::string out = (negative ? "-" : "") + ipart.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

double DyadicRational::to_double() const {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, num_.get_mpz_t());
    return std::ldexp(mant, static_cast<int>(exp2 - static_cast<long>(exp_)));
}

Sign poly_sign_at_dyadic(const CoeffTriple& t, const DyadicRational& x) {
    // Horner on ((p + b 2^e) p + c 4^e) p + d 8^e.
    const BigInt& p = x.numerator();
    const auto e = static_cast<mp_bitcnt_t>(x.exponent());
    BigInt acc = t.b();
    acc <<= e;
    acc += p;
    acc *= p;
    BigInt term = t.c();
    term <<= 2 * e;
    acc += term;
    acc *= p;
    term = t.d();
    term <<= 3 * e;
    acc += term;
    return static_cast<Sign>(sgn(acc));
}

std::string RootInterval::to_string(unsigned digits) const {
    const DyadicRational mid(lo.scaled_to(depth + 1) + 1, depth + 1);
    return mid.to_decimal(digits) + " +/- 2^-" + std::to_string(depth + 1);
}

IsolatedBits isolate_root_bits(const CoeffTriple& t, std::uint64_t k) {
    // Invariant: root in (m / 2^i, (m + 1) / 2^i).
    BigInt m = 0;
    std::string bits;
    bits.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        BigInt mid = m;
        mid <<= 1;
        mid += 1;
        const Sign s = poly_sign_at_dyadic(t, DyadicRational(mid, i + 1));
        if (s == Sign::Zero)
            throw CorruptState("polynomial vanishes at a dyadic midpoint for " + t.to_string());
        m <<= 1;
        if (s == Sign::Negative) {
            m += 1;
            bits.push_back('1');
        } else {
            bits.push_back('0');
        }
    }
    RootInterval iv{DyadicRational(m, k), DyadicRational(m + 1, k), t, k};
    return {std::move(bits), std::move(iv)};
}

RootInterval refine_to_resolution(const CoeffTriple& t, std::uint64_t eps_exponent) {
    if (eps_exponent < 1) throw std::invalid_argument("refine_to_resolution: eps_exponent must be >= 1");
    return isolate_root_bits(t, eps_exponent).interval;
}

}  // namespace cubicprng

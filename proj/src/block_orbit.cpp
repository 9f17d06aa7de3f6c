#include "cubicprng/block_orbit.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubicprng {

namespace {

// Extra quotient bits beyond the j requested, and the lead of c over b
// (beyond j) that keeps the b alpha^2 + alpha^3 term below 2^-(j+64) c.
constexpr std::size_t kGuardBits = 64;
constexpr std::size_t kLeadBits = 72;

std::size_t bits_of(const mpz_class& x) { return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

}  // namespace

BlockOrbit::BlockOrbit(const CoeffTriple& t) : b_(t.b()), c_(t.c()), d_(t.d()) {}

CoeffTriple BlockOrbit::triple() const { return CoeffTriple::trusted(b_, c_, d_); }

std::size_t BlockOrbit::coefficient_bits() const { return std::max({bits_of(b_), bits_of(c_), bits_of(d_)}); }

int BlockOrbit::step() {
    // nd = 1 + 2b + 4c + 8d doubles as the right-branch d'.
    mpz_mul_2exp(nd_.get_mpz_t(), d_.get_mpz_t(), 1);
    nd_ += c_;
    mpz_mul_2exp(nd_.get_mpz_t(), nd_.get_mpz_t(), 1);
    nd_ += b_;
    mpz_mul_2exp(nd_.get_mpz_t(), nd_.get_mpz_t(), 1);
    nd_ += 1;
    const int s = sgn(nd_);
    if (s == 0) throw HalfRoot();
    if (s > 0) {
        mpz_mul_2exp(b_.get_mpz_t(), b_.get_mpz_t(), 1);
        mpz_mul_2exp(c_.get_mpz_t(), c_.get_mpz_t(), 2);
        mpz_mul_2exp(d_.get_mpz_t(), d_.get_mpz_t(), 3);
        return 0;
    }
    c_ += b_;
    mpz_mul_2exp(c_.get_mpz_t(), c_.get_mpz_t(), 2);
    c_ += 3;
    mpz_mul_2exp(b_.get_mpz_t(), b_.get_mpz_t(), 1);
    b_ += 3;
    mpz_swap(d_.get_mpz_t(), nd_.get_mpz_t());
    return 1;
}

bool BlockOrbit::predict(unsigned j) {
    // Leaves the candidate floor(2^j (-d/c)) in m1_.
    const std::size_t cb = bits_of(c_);
    // c keeps j + kGuardBits leading bits, so the quotient is off by < 1.
    if (cb < 2 * j + kGuardBits || cb < bits_of(b_) + j + kLeadBits) return false;
    const auto shift = static_cast<mp_bitcnt_t>(cb - j - kGuardBits);
    mpz_fdiv_q_2exp(tmp_.get_mpz_t(), c_.get_mpz_t(), shift);
    mpz_neg(m1_.get_mpz_t(), d_.get_mpz_t());
    mpz_fdiv_q_2exp(m1_.get_mpz_t(), m1_.get_mpz_t(), shift - j);
    mpz_fdiv_q(m1_.get_mpz_t(), m1_.get_mpz_t(), tmp_.get_mpz_t());
    return mpz_sizeinbase(m1_.get_mpz_t(), 2) <= j;
}

bool BlockOrbit::jump(unsigned j, BitStream& out) {
    if (j == 0 || j > kMaxBlock) throw std::invalid_argument("block length out of range");
    if (!predict(j)) return false;
    mpz_mul(m2_.get_mpz_t(), m1_.get_mpz_t(), m1_.get_mpz_t());
    mpz_mul(m3_.get_mpz_t(), m2_.get_mpz_t(), m1_.get_mpz_t());

    // d' = ((d 2^j + c m) 2^j + b m^2) 2^j + m^3
    mpz_mul_2exp(nd_.get_mpz_t(), d_.get_mpz_t(), j);
    mpz_addmul(nd_.get_mpz_t(), c_.get_mpz_t(), m1_.get_mpz_t());
    mpz_mul_2exp(nd_.get_mpz_t(), nd_.get_mpz_t(), j);
    mpz_addmul(nd_.get_mpz_t(), b_.get_mpz_t(), m2_.get_mpz_t());
    mpz_mul_2exp(nd_.get_mpz_t(), nd_.get_mpz_t(), j);
    nd_ += m3_;
    if (sgn(nd_) >= 0) return false;

    // c' = (c 2^(j-1) + b m) 2^(j+1) + 3 m^2
    mpz_mul_2exp(nc_.get_mpz_t(), c_.get_mpz_t(), j - 1);
    mpz_addmul(nc_.get_mpz_t(), b_.get_mpz_t(), m1_.get_mpz_t());
    mpz_mul_2exp(nc_.get_mpz_t(), nc_.get_mpz_t(), j + 1);
    mpz_addmul_ui(nc_.get_mpz_t(), m2_.get_mpz_t(), 3);

    // b' = b 2^j + 3m
    mpz_mul_2exp(nb_.get_mpz_t(), b_.get_mpz_t(), j);
    mpz_addmul_ui(nb_.get_mpz_t(), m1_.get_mpz_t(), 3);

    tmp_ = nd_ + nc_;
    tmp_ += nb_;
    tmp_ += 1;
    if (sgn(tmp_) <= 0) return false;

    for (unsigned k = j; k-- > 0;) out.push_back(mpz_tstbit(m1_.get_mpz_t(), k) != 0);
    mpz_swap(b_.get_mpz_t(), nb_.get_mpz_t());
    mpz_swap(c_.get_mpz_t(), nc_.get_mpz_t());
    mpz_swap(d_.get_mpz_t(), nd_.get_mpz_t());
    return true;
}

}  // namespace cubicprng

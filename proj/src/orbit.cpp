#include "cubicprng/orbit.hpp"

#include "cubicprng/block_orbit.hpp"
#include "cubicprng/limb_orbit.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>

namespace cubicprng {

Branch branch_sign(const CoeffTriple& t) {
    const int s = sgn(t.half_value());
    if (s == 0) throw HalfRoot();
    return s > 0 ? Branch::Left : Branch::Right;
}

StepResult step(const CoeffTriple& t) {
    BigInt v = t.half_value();
    const int s = sgn(v);
    if (s == 0) throw HalfRoot();
    if (s > 0) {
        BigInt b = t.b(), c = t.c(), d = t.d();
        b <<= 1;
        c <<= 2;
        d <<= 3;
        return {CoeffTriple::trusted(std::move(b), std::move(c), std::move(d)), 0};
    }
    // b' = 2b + 3, c' = 4(b + c) + 3, d' = 1 + 2b + 4c + 8d
    BigInt b = t.b();
    b <<= 1;
    b += 3;
    BigInt c = t.b() + t.c();
    c <<= 2;
    c += 3;
    return {CoeffTriple::trusted(std::move(b), std::move(c), std::move(v)), 1};
}

std::optional<CoeffTriple> inverse_step(const CoeffTriple& t) {
    const bool b_odd = mpz_odd_p(t.b().get_mpz_t());
    const bool c_odd = mpz_odd_p(t.c().get_mpz_t());
    const bool d_odd = mpz_odd_p(t.d().get_mpz_t());
    if (b_odd != c_odd || b_odd != d_odd) return std::nullopt;

    BigInt b0, c0, d0;
    if (!b_odd) {
        if (!mpz_divisible_2exp_p(t.c().get_mpz_t(), 2) || !mpz_divisible_2exp_p(t.d().get_mpz_t(), 3))
            return std::nullopt;
        mpz_fdiv_q_2exp(b0.get_mpz_t(), t.b().get_mpz_t(), 1);
        mpz_fdiv_q_2exp(c0.get_mpz_t(), t.c().get_mpz_t(), 2);
        mpz_fdiv_q_2exp(d0.get_mpz_t(), t.d().get_mpz_t(), 3);
    } else {
        BigInt r = t.b() - 3;
        mpz_fdiv_q_2exp(b0.get_mpz_t(), r.get_mpz_t(), 1);
        r = t.c() - 3 - 4 * b0;
        if (!mpz_divisible_2exp_p(r.get_mpz_t(), 2)) return std::nullopt;
        mpz_fdiv_q_2exp(c0.get_mpz_t(), r.get_mpz_t(), 2);
        r = t.d() - 1 - 2 * b0 - 4 * c0;
        if (!mpz_divisible_2exp_p(r.get_mpz_t(), 3)) return std::nullopt;
        mpz_fdiv_q_2exp(d0.get_mpz_t(), r.get_mpz_t(), 3);
    }
    if (!is_admissible(b0, c0, d0)) return std::nullopt;
    return CoeffTriple::trusted(std::move(b0), std::move(c0), std::move(d0));
}

std::size_t coefficient_bits(const CoeffTriple& t) {
    auto bits = [](const BigInt& x) -> std::size_t {
        return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
    };
    return std::max({bits(t.b()), bits(t.c()), bits(t.d())});
}

CoefficientLimitExceeded::CoefficientLimitExceeded(std::uint64_t step_index, std::size_t bits, std::size_t limit)
    : std::runtime_error("coefficient bit length " + std::to_string(bits) + " exceeds limit " +
                         std::to_string(limit) + " at step " + std::to_string(step_index)),
      step_index_(step_index) {}

// ---------------------------------------------------------------------------
// State records

namespace {

constexpr const char* kStateMagic = "cubic-orbit-state";
constexpr int kStateVersion = 1;

BigInt read_field(std::istream& is, const char* key) {
    std::string name, value;
    if (!(is >> name >> value) || name != key)
        throw std::runtime_error(std::string("orbit state: expected field '") + key + "'");
    BigInt x;
    if (x.set_str(value, 10) != 0) throw std::runtime_error(std::string("orbit state: bad integer for ") + key);
    return x;
}

}  // namespace

void write_state(std::ostream& os, const OrbitState& st) {
    os << kStateMagic << ' ' << kStateVersion << '\n'
       << "seed_b " << st.seed.b().get_str() << '\n'
       << "seed_c " << st.seed.c().get_str() << '\n'
       << "seed_d " << st.seed.d().get_str() << '\n'
       << "step " << st.step_index << '\n'
       << "b " << st.triple.b().get_str() << '\n'
       << "c " << st.triple.c().get_str() << '\n'
       << "d " << st.triple.d().get_str() << '\n';
}

std::string format_state(const OrbitState& st) {
    std::ostringstream os;
    write_state(os, st);
    return os.str();
}

OrbitState read_state(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != kStateMagic) throw std::runtime_error("orbit state: bad header");
    if (version != kStateVersion) throw std::runtime_error("orbit state: unsupported version " + std::to_string(version));
    BigInt sb = read_field(is, "seed_b");
    BigInt sc = read_field(is, "seed_c");
    BigInt sd = read_field(is, "seed_d");
    BigInt n = read_field(is, "step");
    if (sgn(n) < 0 || !n.fits_ulong_p()) throw std::runtime_error("orbit state: bad step index");
    BigInt b = read_field(is, "b");
    BigInt c = read_field(is, "c");
    BigInt d = read_field(is, "d");
    return OrbitState(validate_triple(sb, sc, sd), validate_triple(b, c, d), n.get_ui());
}

OrbitState parse_state(const std::string& text) {
    std::istringstream is(text);
    return read_state(is);
}

// ---------------------------------------------------------------------------
// Generation

GenerateResult generate_bits(const CoeffTriple& seed, std::uint64_t n, const GenerateOptions& opts) {
    return generate_bits(OrbitState(seed), n, opts);
}

namespace {

GenerateResult generate_limb(const OrbitState& from, std::uint64_t n, std::size_t limit) {
    GenerateResult out{BitStream{}, from};
    LimbOrbit orbit(from.triple);
    out.bits.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.bits.push_back(orbit.step() != 0);
        if (limit != 0 && orbit.exceeds_bits(limit))
            throw CoefficientLimitExceeded(from.step_index + i + 1, orbit.coefficient_bits(), limit);
    }
    out.state.triple = orbit.triple();
    out.state.step_index = from.step_index + n;
    return out;
}

GenerateResult generate_block(const OrbitState& from, std::uint64_t n, std::size_t limit) {
    // A step grows coefficients by at most 4 bits (M' <= 14 M + 3), so a
    // block cannot cross the limit while this much slack remains.
    constexpr std::size_t kBlockGrowth = 4 * BlockOrbit::kMaxBlock + 4;
    GenerateResult out{BitStream{}, from};
    BlockOrbit orbit(from.triple);
    out.bits.reserve(n);
    std::uint64_t i = 0;
    while (i < n) {
        if (n - i >= BlockOrbit::kMaxBlock && (limit == 0 || orbit.coefficient_bits() + kBlockGrowth <= limit)) {
            if (orbit.jump(BlockOrbit::kMaxBlock, out.bits)) {
                i += BlockOrbit::kMaxBlock;
                continue;
            }
        }
        out.bits.push_back(orbit.step() != 0);
        ++i;
        if (limit != 0 && orbit.coefficient_bits() > limit)
            throw CoefficientLimitExceeded(from.step_index + i, orbit.coefficient_bits(), limit);
    }
    out.state.triple = orbit.triple();
    out.state.step_index = from.step_index + n;
    return out;
}

}  // namespace

GenerateResult generate_bits(const OrbitState& from, std::uint64_t n, const GenerateOptions& opts) {
    if (n == 0) return {BitStream{}, from};
    const std::size_t limit = opts.max_coefficient_bits.value_or(0);
    return opts.kernel == Kernel::Limb ? generate_limb(from, n, limit) : generate_block(from, n, limit);
}

GenerateResult generate_bits_reference(const OrbitState& from, std::uint64_t n, const GenerateOptions& opts) {
    GenerateResult out{BitStream{}, from};
    out.bits.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        auto [next, bit] = step(out.state.triple);
        out.bits.push_back(bit != 0);
        out.state.triple = std::move(next);
        ++out.state.step_index;
        if (opts.max_coefficient_bits) {
            const auto bits = coefficient_bits(out.state.triple);
            if (bits > *opts.max_coefficient_bits)
                throw CoefficientLimitExceeded(out.state.step_index, bits, *opts.max_coefficient_bits);
        }
    }
    return out;
}

}  // namespace cubicprng

#include "cubicprng/seeds.hpp"

#include "cubicprng/orbit.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <map>
#include <sstream>
#include <unordered_map>

namespace cubicprng {

const char* to_string(SourceReason r) noexcept {
    switch (r) {
    case SourceReason::MixedParity:
        return "MixedParity";
    case SourceReason::EvenResidue:
        return "EvenResidue";
    case SourceReason::OddResidue:
        return "OddResidue";
    case SourceReason::NotSource:
        return "NotSource";
    }
    return "?";
}

namespace {

// Non-negative residue of x mod 2^k.
unsigned long mod_pow2(const BigInt& x, unsigned k) {
    BigInt r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), k);
    return r.get_ui();
}

}  // namespace

SourceVerdict is_source_point(const CoeffTriple& t) {
    const auto pb = mod_pow2(t.b(), 1), pc = mod_pow2(t.c(), 1), pd = mod_pow2(t.d(), 1);
    if (pb != pc || pb != pd) return {true, SourceReason::MixedParity};
    if (pb == 0) {
        if (mod_pow2(t.c(), 2) != 0 || mod_pow2(t.d(), 3) != 0) return {true, SourceReason::EvenResidue};
        return {false, SourceReason::NotSource};
    }
    const BigInt r4 = t.c() - 2 * t.b();
    const BigInt r8 = t.b() - t.c() + t.d();
    if (mod_pow2(r4, 2) != 1 || mod_pow2(r8, 3) != 1) return {true, SourceReason::OddResidue};
    return {false, SourceReason::NotSource};
}

CoeffTriple seed_set_member(std::int64_t b, std::int64_t c, std::int64_t k) {
    return validate_triple(BigInt(static_cast<long>(b)), BigInt(static_cast<long>(c)), BigInt(-static_cast<long>(k) - 1));
}

SeedSet build_seed_set(std::int64_t b, std::int64_t c) {
    if (c < 1) throw InvalidShape("seed set requires c >= 1");
    if (static_cast<__int128>(b) * b > static_cast<__int128>(3) * c)
        throw InvalidShape("seed set requires b^2 <= 3c (got b=" + std::to_string(b) + ", c=" + std::to_string(c) + ")");
    if (b + c < 1) throw InvalidShape("seed set requires b + c >= 1");

    SeedSet s;
    s.b = b;
    s.c = c;
    s.parity_rule = ((b & 1) != 0) != ((c & 1) != 0);
    s.members.reserve(static_cast<std::size_t>(b + c));
    for (std::int64_t k = 0; k < b + c; ++k) {
        const BigInt d(-static_cast<long>(k) - 1);
        try {
            s.members.push_back(validate_triple(BigInt(static_cast<long>(b)), BigInt(static_cast<long>(c)), d));
        } catch (const std::domain_error&) {
            s.excluded_d.push_back(-k - 1);
        }
    }
    return s;
}

BitStream generate_seed_set_bits(const SeedSet& s, std::uint64_t per_seed_bits, std::uint64_t drop_prefix_bits,
                                 Execution exec) {
    if (drop_prefix_bits > per_seed_bits) throw std::invalid_argument("drop prefix exceeds per-seed bit count");
    const auto n = static_cast<std::ptrdiff_t>(s.members.size());
    std::vector<BitStream> parts(s.members.size());
    std::vector<std::exception_ptr> errors(s.members.size());
    auto one = [&](std::ptrdiff_t k) {
        try {
            parts[k] = generate_bits(s.members[k], per_seed_bits).bits.suffix(drop_prefix_bits);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t k = 0; k < n; ++k) one(k);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k) one(k);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    BitStream out;
    out.reserve((per_seed_bits - drop_prefix_bits) * s.members.size());
    for (const auto& p : parts) out.append(p);
    return out;
}

GapReport gap_report(const SeedSet& s, std::uint64_t precision, Execution exec) {
    if (precision < 32) throw PrecisionTooLow("gap_report needs precision >= 32 bits");
    const auto n = static_cast<std::ptrdiff_t>(s.members.size());
    std::vector<DyadicRational> lo(s.members.size());
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t k = 0; k < n; ++k) lo[k] = refine_to_resolution(s.members[k], precision).lo;
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k) lo[k] = refine_to_resolution(s.members[k], precision).lo;
    }

    GapReport r;
    r.precision = precision;
    const DyadicRational width(1, precision);
    const BigInt c(static_cast<long>(s.c));
    const DyadicRational one(1, 0);
    for (std::ptrdiff_t k = 0; k + 1 < n; ++k) {
        Gap g{-static_cast<std::int64_t>(k) - 1, lo[k + 1] - lo[k], lo[k + 1] - (lo[k] + width),
              (lo[k + 1] + width) - lo[k]};
        if (sgn(g.lower.numerator()) <= 0)
            throw PrecisionTooLow("root intervals at 2^-" + std::to_string(precision) + " do not separate d=" +
                                  std::to_string(g.d) + " from its neighbour");
        r.max_deviation = std::max(r.max_deviation, std::abs(g.estimate.to_double() * static_cast<double>(s.c) - 1.0));
        const DyadicRational over = g.upper * c - one;
        const DyadicRational under = one - g.lower * c;
        r.max_deviation_bound = std::max({r.max_deviation_bound, over, under});
        r.gaps.push_back(std::move(g));
    }
    return r;
}

bool gap_bounds_hold(const SeedSet& s, const GapReport& r) {
    const std::int64_t abs_b = std::llabs(s.b);
    if (s.c <= 2 * abs_b) throw std::invalid_argument("gap bounds need c > 2|b|");
    const BigInt wide(static_cast<long>(s.c + 3 + 2 * abs_b));
    const BigInt narrow(static_cast<long>(s.c - 2 * abs_b));
    const DyadicRational one(1, 0);
    return std::all_of(r.gaps.begin(), r.gaps.end(), [&](const Gap& g) {
        return compare(g.lower * wide, one) >= 0 && compare(g.upper * narrow, one) <= 0;
    });
}

MergerAudit merger_audit(const std::vector<CoeffTriple>& members, std::uint64_t horizon) {
    MergerAudit audit;
    audit.horizon = horizon;
    std::unordered_map<std::string, std::pair<std::size_t, std::uint64_t>> seen;
    seen.reserve(members.size() * (horizon + 1));
    std::vector<CoeffTriple> current = members;
    for (std::uint64_t k = 0; k <= horizon; ++k) {
        for (std::size_t i = 0; i < current.size(); ++i) {
            const auto& t = current[i];
            std::string key = t.b().get_str(62) + ':' + t.c().get_str(62) + ':' + t.d().get_str(62);
            auto [it, inserted] = seen.try_emplace(std::move(key), i, k);
            if (!inserted) {
                audit.pass = false;
                audit.first = Collision{i, k, it->second.first, it->second.second};
                return audit;
            }
        }
        if (k == horizon) break;
        for (auto& t : current) t = step(t).next;
    }
    return audit;
}

BigInt cubic_discriminant(const CoeffTriple& t) {
    const BigInt &b = t.b(), &c = t.c(), &d = t.d();
    return 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
}

namespace {

std::vector<unsigned long> primes_up_to(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<unsigned long> primes;
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        primes.push_back(static_cast<unsigned long>(p));
        for (std::uint64_t q = p * p; q <= bound; q += p) composite[q] = true;
    }
    return primes;
}

DiscriminantKernel kernel_with(const CoeffTriple& t, const std::vector<unsigned long>& primes, std::uint64_t bound) {
    DiscriminantKernel k;
    k.discriminant = cubic_discriminant(t);
    BigInt rest = abs(k.discriminant);
    BigInt kernel = 1;
    if (sgn(rest) == 0) return k;  // repeated root; never for admissible triples
    for (unsigned long p : primes) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        unsigned exponent = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++exponent;
        }
        if (exponent & 1) kernel *= p;
    }
    BigInt cube;
    mpz_ui_pow_ui(cube.get_mpz_t(), bound, 3);
    if (rest == 1 || mpz_perfect_square_p(rest.get_mpz_t())) {
        k.certified = true;
    } else if (rest < cube) {
        k.certified = true;
        kernel *= rest;
    }
    k.kernel = sgn(k.discriminant) * kernel;
    return k;
}

}  // namespace

DiscriminantKernel discriminant_kernel(const CoeffTriple& t, std::uint64_t factor_bound) {
    if (factor_bound < 2) throw std::invalid_argument("factor_bound must be >= 2");
    return kernel_with(t, primes_up_to(factor_bound), factor_bound);
}

Distinctness DistinctnessReport::verdict(std::size_t i, std::size_t j) const {
    const auto &x = kernels.at(i), &y = kernels.at(j);
    return x.certified && y.certified && x.kernel != y.kernel ? Distinctness::Distinct : Distinctness::Unknown;
}

DistinctnessReport field_distinctness_check(const std::vector<CoeffTriple>& members, std::uint64_t factor_bound) {
    if (factor_bound < 2) throw std::invalid_argument("factor_bound must be >= 2");
    const auto primes = primes_up_to(factor_bound);
    DistinctnessReport r;
    r.factor_bound = factor_bound;
    r.kernels.resize(members.size());
    const auto n = static_cast<std::ptrdiff_t>(members.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) r.kernels[i] = kernel_with(members[i], primes, factor_bound);

    // Group certified members by kernel; pairs inside a group, and pairs
    // touching an uncertified member, are Unknown.
    std::map<BigInt, std::vector<std::size_t>> groups;
    std::vector<std::size_t> uncertified;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (r.kernels[i].certified)
            groups[r.kernels[i].kernel].push_back(i);
        else
            uncertified.push_back(i);
    }
    for (const auto& [kernel, idx] : groups)
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) r.unknown_pairs.emplace_back(idx[a], idx[b]);
    for (std::size_t u : uncertified)
        for (std::size_t j = 0; j < members.size(); ++j)
            if (j != u && (r.kernels[j].certified || j > u)) r.unknown_pairs.emplace_back(std::min(u, j), std::max(u, j));
    std::sort(r.unknown_pairs.begin(), r.unknown_pairs.end());
    const std::uint64_t m = members.size();
    r.distinct_pairs = m * (m - (m > 0 ? 1 : 0)) / 2 - r.unknown_pairs.size();
    return r;
}

std::string seed_set_text(const SeedSet& s) {
    std::ostringstream os;
    for (const auto& t : s.members)
        os << t.b().get_str() << ' ' << t.c().get_str() << ' ' << t.d().get_str() << ' '
           << (is_source_point(t).source ? 1 : 0) << '\n';
    return os.str();
}

nlohmann::json to_json(const SeedSet& s) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& t : s.members) {
        const auto v = is_source_point(t);
        members.push_back({{"b", s.b},
                           {"c", s.c},
                           {"d", t.d().get_si()},
                           {"source", v.source},
                           {"reason", to_string(v.reason)}});
    }
    return {{"b", s.b},
            {"c", s.c},
            {"parity_rule", s.parity_rule},
            {"member_count", s.members.size()},
            {"excluded_d", s.excluded_d},
            {"members", std::move(members)}};
}

nlohmann::json to_json(const GapReport& r) {
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& g : r.gaps)
        gaps.push_back({{"d", g.d},
                        {"gap", g.estimate.to_decimal(24)},
                        {"lower", g.lower.to_decimal(24)},
                        {"upper", g.upper.to_decimal(24)}});
    return {{"precision", r.precision},
            {"max_deviation", r.max_deviation},
            {"max_deviation_bound", r.max_deviation_bound.to_decimal(24)},
            {"gaps", std::move(gaps)}};
}

nlohmann::json to_json(const MergerAudit& a) {
    nlohmann::json j = {{"pass", a.pass}, {"horizon", a.horizon}};
    if (a.first)
        j["first_collision"] = {{"member", a.first->member},
                                {"step", a.first->step},
                                {"other_member", a.first->other_member},
                                {"other_step", a.first->other_step}};
    return j;
}

nlohmann::json to_json(const DistinctnessReport& r, const SeedSet& s) {
    nlohmann::json kernels = nlohmann::json::array();
    for (std::size_t i = 0; i < r.kernels.size(); ++i)
        kernels.push_back({{"d", s.members[i].d().get_si()},
                           {"discriminant", r.kernels[i].discriminant.get_str()},
                           {"squarefree_part", r.kernels[i].certified ? r.kernels[i].kernel.get_str() : ""},
                           {"certified", r.kernels[i].certified}});
    nlohmann::json unknown = nlohmann::json::array();
    for (auto [i, j] : r.unknown_pairs)
        unknown.push_back({s.members[i].d().get_si(), s.members[j].d().get_si()});
    return {{"factor_bound", r.factor_bound},
            {"distinct_pairs", r.distinct_pairs},
            {"unknown_pairs", std::move(unknown)},
            {"all_distinct", r.all_distinct()},
            {"kernels", std::move(kernels)}};
}

}  // namespace cubicprng

// Initial-point sets I_{b,c} = {(b, c, d) : d = -1, -2, ..., -(b+c)}.
//
// Roots of a set's members sit almost equidistantly in (0, 1) with spacing
// close to 1/c. Members that are source points (no preimage under the orbit
// map) can never have merging orbits, because the map is injective.
#pragma once

#include "cubicprng/bitstream.hpp"
#include "cubicprng/exact_roots.hpp"
#include "cubicprng/execution.hpp"
#include "cubicprng/triple.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubicprng {

enum class SourceReason { MixedParity, EvenResidue, OddResidue, NotSource };

const char* to_string(SourceReason r) noexcept;

struct SourceVerdict {
    bool source;
    SourceReason reason;
};

/// Residue test for having no preimage: mixed parity; all even with
/// c != 0 (mod 4) or d != 0 (mod 8); all odd with -2b + c != 1 (mod 4) or
/// b - c + d != 1 (mod 8).
SourceVerdict is_source_point(const CoeffTriple& t);

class InvalidShape : public std::invalid_argument {
public:
    explicit InvalidShape(const std::string& what) : std::invalid_argument(what) {}
};

struct SeedSet {
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::vector<CoeffTriple> members;  // d = -1, -2, ... (descending d)
    std::vector<std::int64_t> excluded_d;
    /// b and c of opposite parity: every member is then a source point.
    bool parity_rule = false;
};

/// Requires c >= 1, b + c >= 1 and b^2 <= 3c; throws InvalidShape otherwise.
SeedSet build_seed_set(std::int64_t b, std::int64_t c);

/// The k-th member (0-based) of I_{b,c} without materializing the set.
CoeffTriple seed_set_member(std::int64_t b, std::int64_t c, std::int64_t k);

/// Generates per_seed_bits from every member, drops the first
/// drop_prefix_bits of each, and concatenates in descending-d order.
/// The result does not depend on exec.
BitStream generate_seed_set_bits(const SeedSet& s, std::uint64_t per_seed_bits, std::uint64_t drop_prefix_bits,
                                 Execution exec = Execution::Parallel);

class PrecisionTooLow : public std::runtime_error {
public:
    explicit PrecisionTooLow(const std::string& what) : std::runtime_error(what) {}
};

/// Gap between the roots of (b, c, d-1) and (b, c, d).
struct Gap {
    std::int64_t d;
    DyadicRational estimate;  // lo(d-1) - lo(d), within 2^-precision
    DyadicRational lower;     // certified: gap > lower
    DyadicRational upper;     // certified: gap < upper
};

struct GapReport {
    std::uint64_t precision = 0;
    std::vector<Gap> gaps;
    /// max |estimate * c - 1|.
    double max_deviation = 0.0;
    /// Certified bound: every |gap * c - 1| < max_deviation_bound.
    DyadicRational max_deviation_bound;
};

GapReport gap_report(const SeedSet& s, std::uint64_t precision, Execution exec = Execution::Parallel);

/// Checks the mean-value bounds 1/(c + 3 + 2|b|) < gap < 1/(c - 2|b|) for
/// every gap using the certified interval ends. Requires c > 2|b|.
bool gap_bounds_hold(const SeedSet& s, const GapReport& r);

struct Collision {
    std::size_t member;
    std::uint64_t step;
    std::size_t other_member;
    std::uint64_t other_step;
};

struct MergerAudit {
    bool pass = true;
    std::uint64_t horizon = 0;
    std::optional<Collision> first;
};

/// Iterates every member `horizon` steps and looks for any state shared by
/// two members' orbits, at equal or different step indices.
MergerAudit merger_audit(const std::vector<CoeffTriple>& members, std::uint64_t horizon);
inline MergerAudit merger_audit(const SeedSet& s, std::uint64_t horizon) { return merger_audit(s.members, horizon); }

/// disc(x^3 + b x^2 + c x + d) = 18bcd - 4b^3 d + b^2 c^2 - 4c^3 - 27d^2.
BigInt cubic_discriminant(const CoeffTriple& t);

struct DiscriminantKernel {
    BigInt discriminant;
    BigInt kernel;  // signed squarefree part; meaningful only when certified
    bool certified = false;
};

/// Squarefree part by trial division with primes <= factor_bound. The
/// leftover cofactor R is accepted when R is 1, a perfect square, or below
/// factor_bound^3 (then R is a prime or a product of two distinct primes).
DiscriminantKernel discriminant_kernel(const CoeffTriple& t, std::uint64_t factor_bound);

enum class Distinctness { Distinct, Unknown };

struct DistinctnessReport {
    std::uint64_t factor_bound = 0;
    std::vector<DiscriminantKernel> kernels;
    std::uint64_t distinct_pairs = 0;
    std::vector<std::pair<std::size_t, std::size_t>> unknown_pairs;

    /// Distinct only when both kernels are certified and differ.
    Distinctness verdict(std::size_t i, std::size_t j) const;
    bool all_distinct() const noexcept { return unknown_pairs.empty(); }
};

DistinctnessReport field_distinctness_check(const std::vector<CoeffTriple>& members, std::uint64_t factor_bound);
inline DistinctnessReport field_distinctness_check(const SeedSet& s, std::uint64_t factor_bound) {
    return field_distinctness_check(s.members, factor_bound);
}

/// One "b c d source_flag" line per member.
std::string seed_set_text(const SeedSet& s);

nlohmann::json to_json(const SeedSet& s);
nlohmann::json to_json(const GapReport& r);
nlohmann::json to_json(const MergerAudit& a);
nlohmann::json to_json(const DistinctnessReport& r, const SeedSet& s);

}  // namespace cubicprng

// Exact orbits of the doubling map x -> 2x mod 1 on cubic algebraic integers,
// carried out on coefficient triples.
//
// If the root alpha of (b, c, d) lies in (0, 1/2), the root 2*alpha has
// triple (2b, 4c, 8d); if it lies in (1/2, 1), the root 2*alpha - 1 has
// triple (2b+3, 4b+4c+3, 2b+4c+8d+1). Which half alpha lies in is the sign
// of 1 + 2b + 4c + 8d, and that half is the emitted bit.
#pragma once

#include "cubicprng/bitstream.hpp"
#include "cubicprng/triple.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace cubicprng {

enum class Branch { Left, Right };

inline int bit_of(Branch b) noexcept { return b == Branch::Right ? 1 : 0; }

Branch branch_sign(const CoeffTriple& t);

struct StepResult {
    CoeffTriple next;
    int bit;
};

/// One application of the triple map. Reference implementation on GMP
/// integers; the generation path uses LimbOrbit instead.
StepResult step(const CoeffTriple& t);

/// The unique preimage under step, or nullopt when t is a source point.
std::optional<CoeffTriple> inverse_step(const CoeffTriple& t);

struct OrbitState {
    CoeffTriple seed;
    CoeffTriple triple;
    std::uint64_t step_index = 0;

    explicit OrbitState(const CoeffTriple& s) : seed(s), triple(s) {}
    OrbitState(CoeffTriple s, CoeffTriple t, std::uint64_t n) : seed(std::move(s)), triple(std::move(t)), step_index(n) {}

    friend bool operator==(const OrbitState&, const OrbitState&) = default;
};

/// Versioned text record: decimal seed and current coefficients plus step index.
void write_state(std::ostream& os, const OrbitState& st);
std::string format_state(const OrbitState& st);
/// Throws std::runtime_error on malformed records, ConditionViolation on
/// inadmissible coefficients.
OrbitState read_state(std::istream& is);
OrbitState parse_state(const std::string& text);

class CoefficientLimitExceeded : public std::runtime_error {
public:
    CoefficientLimitExceeded(std::uint64_t step_index, std::size_t bits, std::size_t limit);
    std::uint64_t step_index() const noexcept { return step_index_; }

private:
    std::uint64_t step_index_;
};

/// Block: 64-step jumps once coefficients are large, single steps before.
/// Limb: the fused single-step limb kernel throughout.
enum class Kernel { Block, Limb };

struct GenerateOptions {
    /// Abort once any |coefficient| needs more than this many bits.
    std::optional<std::size_t> max_coefficient_bits;
    Kernel kernel = Kernel::Block;
};

struct GenerateResult {
    BitStream bits;
    OrbitState state;
};

GenerateResult generate_bits(const CoeffTriple& seed, std::uint64_t n, const GenerateOptions& opts = {});
GenerateResult generate_bits(const OrbitState& from, std::uint64_t n, const GenerateOptions& opts = {});

/// Same contract as generate_bits, stepping with the GMP reference step.
GenerateResult generate_bits_reference(const OrbitState& from, std::uint64_t n, const GenerateOptions& opts = {});

/// Bit length of max(|b|, |c|, |d|).
std::size_t coefficient_bits(const CoeffTriple& t);

}  // namespace cubicprng

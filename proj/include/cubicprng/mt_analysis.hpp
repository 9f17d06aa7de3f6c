// GF(2)-linear structure of MT19937 outputs.
//
// Every MT19937 output sequence satisfies
//     y_n = y_{n-227} + A y_{n-623} + B y_{n-624},   n >= 624,
// with fixed 32x32 matrices A and B. When rows 1..8 of A are orthogonal to
// y_{n-623} and B y_{n-624} = 0, the top bytes of y_n and y_{n-227} agree.
#pragma once

#include "cubicprng/gf2.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubicprng {

inline constexpr std::size_t kLagShort = 227;
inline constexpr std::size_t kLagA = 623;
inline constexpr std::size_t kLagB = 624;

struct RecurrenceMatrices {
    Gf2Matrix32 a;
    Gf2Matrix32 b;
};

class DataCorrupt : public std::runtime_error {
public:
    explicit DataCorrupt(const std::string& what) : std::runtime_error(what) {}
};

/// CRC-32 of the 32 row strings joined by '\n'.
std::uint32_t matrix_checksum(const Gf2Matrix32& m);

/// Matrix file: 32 lines of 32 '0'/'1' characters, then "crc32 xxxxxxxx".
std::string format_matrix(const Gf2Matrix32& m);
/// Throws DataCorrupt on shape or checksum mismatch.
Gf2Matrix32 parse_matrix(const std::string& text);
Gf2Matrix32 load_matrix_file(const std::string& path);

/// The shipped A and B, parsed and checksum-verified.
RecurrenceMatrices load_recurrence_matrices();

struct RecurrenceCheck {
    bool pass = true;
    std::optional<std::size_t> first_violation;
    std::size_t checked = 0;
};

RecurrenceCheck verify_recurrence(std::span<const std::uint32_t> outputs, const RecurrenceMatrices& m);

class RankDeficient : public std::runtime_error {
public:
    explicit RankDeficient(int rank)
        : std::runtime_error("GF(2) system reached rank " + std::to_string(rank) + " of 64; more output needed"),
          rank_(rank) {}
    int rank() const noexcept { return rank_; }

private:
    int rank_;
};

/// Solves for the A, B that make the recurrence hold on `outputs`, using
/// equations from n = 624 onward until the 64 unknowns per row are pinned.
RecurrenceMatrices recover_matrices(std::span<const std::uint32_t> outputs);

struct LagPair {
    std::size_t n;
    unsigned y_lag;  // top byte of y_{n-227}
    unsigned y_n;    // top byte of y_n
};

/// (a) rows 1..8 of A orthogonal to y_{n-623}; (b) row 2 of B orthogonal to y_{n-624}.
bool conditions_ab(std::span<const std::uint32_t> outputs, std::size_t n, const RecurrenceMatrices& m);

std::vector<LagPair> scan_conditions_ab(std::span<const std::uint32_t> outputs, const RecurrenceMatrices& m);

/// "n,y_lag,y_n" header plus one row per pair.
void write_lag_csv(std::ostream& os, std::span<const LagPair> pairs);

std::vector<std::uint32_t> read_words_le(const std::string& path);
void write_words_le(std::ostream& os, std::span<const std::uint32_t> words);

}  // namespace cubicprng

#include "cubicprng/mt_analysis.hpp"

#include "mt_matrix_data.hpp"

#include <boost/crc.hpp>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace cubicprng {

std::uint32_t matrix_checksum(const Gf2Matrix32& m) {
    boost::crc_32_type crc;
    const auto rows = m.to_strings();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) crc.process_byte('\n');
        crc.process_bytes(rows[i].data(), rows[i].size());
    }
    return crc.checksum();
}

std::string format_matrix(const Gf2Matrix32& m) {
    std::string out;
    for (const auto& row : m.to_strings()) out += row + '\n';
    char line[32];
    std::snprintf(line, sizeof line, "crc32 %08x\n", matrix_checksum(m));
    return out + line;
}

Gf2Matrix32 parse_matrix(const std::string& text) {
    std::istringstream is(text);
    std::vector<std::string> rows;
    std::string line;
    while (rows.size() < 32 && std::getline(is, line)) rows.push_back(line);
    auto m = Gf2Matrix32::from_strings(rows);
    if (!m) throw DataCorrupt("matrix data: expected 32 rows of 32 '0'/'1' characters");
    std::string tag;
    std::string hex;
    if (!(is >> tag >> hex) || tag != "crc32") throw DataCorrupt("matrix data: missing crc32 line");
    const auto expected = static_cast<std::uint32_t>(std::stoul(hex, nullptr, 16));
    if (expected != matrix_checksum(*m)) throw DataCorrupt("matrix data: checksum mismatch");
    return *m;
}

Gf2Matrix32 load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file " + path);
    return parse_matrix(std::string(std::istreambuf_iterator<char>(in), {}));
}

RecurrenceMatrices load_recurrence_matrices() {
    return {parse_matrix(detail::kMatrixAText), parse_matrix(detail::kMatrixBText)};
}

namespace {

bool recurrence_holds(std::span<const std::uint32_t> y, std::size_t n, const RecurrenceMatrices& m) {
    const Gf2Vector32 rhs =
        Gf2Vector32(y[n - kLagShort]) ^ (m.a * Gf2Vector32(y[n - kLagA])) ^ (m.b * Gf2Vector32(y[n - kLagB]));
    return rhs.word() == y[n];
}

}  // namespace

RecurrenceCheck verify_recurrence(std::span<const std::uint32_t> outputs, const RecurrenceMatrices& m) {
    if (outputs.size() <= kLagB) throw std::invalid_argument("verify_recurrence needs at least 625 outputs");
    RecurrenceCheck r;
    for (std::size_t n = kLagB; n < outputs.size(); ++n) {
        ++r.checked;
        if (!recurrence_holds(outputs, n, m)) {
            r.pass = false;
            r.first_violation = n;
            break;
        }
    }
    return r;
}

RecurrenceMatrices recover_matrices(std::span<const std::uint32_t> outputs) {
    // Unknowns: row i of A in coefficient bits 63..32, row i of B in 31..0,
    // shared by all 32 output rows; rhs bit 31 - (i-1) belongs to row i.
    Gf2System64 sys;
    for (std::size_t n = kLagB; n < outputs.size() && sys.rank() < 64; ++n) {
        const std::uint64_t coeffs = (std::uint64_t{outputs[n - kLagA]} << 32) | outputs[n - kLagB];
        sys.add(coeffs, outputs[n] ^ outputs[n - kLagShort]);
    }
    if (sys.rank() < 64) throw RankDeficient(sys.rank());
    const auto x = sys.solve();

    RecurrenceMatrices m;
    for (int i = 1; i <= 32; ++i) {
        std::uint32_t row_a = 0, row_b = 0;
        for (int j = 1; j <= 32; ++j) {
            const int bit_a = 63 - (j - 1);
            const int bit_b = 31 - (j - 1);
            row_a |= ((x[static_cast<std::size_t>(bit_a)] >> (32 - i)) & 1u) << (32 - j);
            row_b |= ((x[static_cast<std::size_t>(bit_b)] >> (32 - i)) & 1u) << (32 - j);
        }
        m.a.set_row(i, Gf2Vector32(row_a));
        m.b.set_row(i, Gf2Vector32(row_b));
    }
    return m;
}

bool conditions_ab(std::span<const std::uint32_t> outputs, std::size_t n, const RecurrenceMatrices& m) {
    const Gf2Vector32 ya(outputs[n - kLagA]);
    for (int i = 1; i <= 8; ++i)
        if (dot(m.a.row(i), ya) != 0) return false;
    return dot(m.b.row(2), Gf2Vector32(outputs[n - kLagB])) == 0;
}

std::vector<LagPair> scan_conditions_ab(std::span<const std::uint32_t> outputs, const RecurrenceMatrices& m) {
    if (outputs.size() <= kLagB) throw std::invalid_argument("scan_conditions_ab needs at least 625 outputs");
    std::vector<LagPair> out;
    for (std::size_t n = kLagB; n < outputs.size(); ++n)
        if (conditions_ab(outputs, n, m))
            out.push_back({n, Gf2Vector32(outputs[n - kLagShort]).top8(), Gf2Vector32(outputs[n]).top8()});
    return out;
}

void write_lag_csv(std::ostream& os, std::span<const LagPair> pairs) {
    os << "n,y_lag,y_n\n";
    for (const auto& p : pairs) os << p.n << ',' << p.y_lag << ',' << p.y_n << '\n';
}

std::vector<std::uint32_t> read_words_le(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open word file " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
    if (bytes.size() % 4 != 0) throw std::runtime_error("word file length is not a multiple of 4: " + path);
    std::vector<std::uint32_t> words(bytes.size() / 4);
    for (std::size_t k = 0; k < words.size(); ++k)
        words[k] = std::uint32_t{bytes[4 * k]} | (std::uint32_t{bytes[4 * k + 1]} << 8) |
                   (std::uint32_t{bytes[4 * k + 2]} << 16) | (std::uint32_t{bytes[4 * k + 3]} << 24);
    return words;
}

void write_words_le(std::ostream& os, std::span<const std::uint32_t> words) {
    for (auto w : words) {
        const char bytes[4] = {static_cast<char>(w), static_cast<char>(w >> 8), static_cast<char>(w >> 16),
                               static_cast<char>(w >> 24)};
        os.write(bytes, 4);
    }
}

}  // namespace cubicprng

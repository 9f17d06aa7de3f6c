#include "cubicprng/gf2.hpp"

#include <stdexcept>

namespace cubicprng {

std::vector<std::string> Gf2Matrix32::to_strings() const {
    std::vector<std::string> out;
    out.reserve(32);
    for (int i = 1; i <= 32; ++i) {
        std::string s(32, '0');
        for (int j = 1; j <= 32; ++j)
            if (at(i, j)) s[static_cast<std::size_t>(j - 1)] = '1';
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<Gf2Matrix32> Gf2Matrix32::from_strings(const std::vector<std::string>& rows) {
    if (rows.size() != 32) return std::nullopt;
    Gf2Matrix32 m;
    for (int i = 1; i <= 32; ++i) {
        const auto& s = rows[static_cast<std::size_t>(i - 1)];
        if (s.size() != 32) return std::nullopt;
        std::uint32_t w = 0;
        for (char ch : s) {
            if (ch != '0' && ch != '1') return std::nullopt;
            w = (w << 1) | static_cast<std::uint32_t>(ch == '1');
        }
        m.set_row(i, Gf2Vector32(w));
    }
    return m;
}

bool Gf2System64::add(std::uint64_t coeffs, std::uint32_t rhs) {
    for (int bit = 63; bit >= 0 && coeffs != 0; --bit) {
        if (!((coeffs >> bit) & 1u)) continue;
        if (!used_[bit]) {
            used_[bit] = true;
            coeffs_[bit] = coeffs;
            rhs_[bit] = rhs;
            ++rank_;
            return true;
        }
        coeffs ^= coeffs_[bit];
        rhs ^= rhs_[bit];
    }
    if (rhs != 0) ++inconsistent_;
    return false;
}

std::array<std::uint32_t, 64> Gf2System64::solve() const {
    if (rank_ != 64) throw std::logic_error("Gf2System64::solve needs full rank");
    // Pivot row `bit` has its leading 1 at `bit`; lower unknowns are solved first.
    std::array<std::uint32_t, 64> x{};
    for (int bit = 0; bit < 64; ++bit) {
        std::uint32_t v = rhs_[bit];
        std::uint64_t rest = coeffs_[bit] & ((std::uint64_t{1} << bit) - 1);
        while (rest != 0) {
            const int j = std::countr_zero(rest);
            v ^= x[j];
            rest &= rest - 1;
        }
        x[bit] = v;
    }
    return x;
}

}  // namespace cubicprng

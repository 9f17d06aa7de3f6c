// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--ci] [--record-golden PATH]
//
// --ci runs the cubic-word scan of criterion 6 on 10^6 bits instead of 10^7.
// --record-golden writes the criterion 7 P-values as a header and exits.
#include "cubicprng/bitstream.hpp"
#include "cubicprng/exact_roots.hpp"
#include "cubicprng/mt19937.hpp"
#include "cubicprng/mt_analysis.hpp"
#include "cubicprng/orbit.hpp"
#include "cubicprng/seeds.hpp"
#include "cubicprng/stats.hpp"
#include "fixtures.hpp"
#include "golden_stats.hpp"

#include <boost/crc.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cubicprng;

namespace {

// Pinned tolerances and sizes.
constexpr long kSetC = 1001;
constexpr std::uint64_t kOracleBits = 256;
constexpr std::uint64_t kRandomSteps = 100000;
constexpr std::uint64_t kGapPrecision = 64;
constexpr double kGapDeviationLimit = 3.0 / 1001.0;
constexpr std::size_t kMtOutputs = 1000;
constexpr std::size_t kRecurrenceEnd = 10000;
constexpr std::size_t kScanWords = 312500;
constexpr double kCountSigmas = 6.0;
constexpr double kChiSquareAlpha = 0.001;
constexpr std::uint64_t kFullCubicBits = 10000000;
constexpr std::uint64_t kCiCubicBits = 1000000;
constexpr std::uint64_t kStatsBits = 1000000;
constexpr double kStatsAlpha = 0.01;
constexpr double kOracleTolerance = 1e-10;  // scipy/mpmath oracle vs this build
constexpr std::uint64_t kMergerHorizon = 1000;

struct Line {
    bool pass;
    std::string detail;
};

CoeffTriple T(long b, long c, long d) { return validate_triple(b, c, d); }

std::uint32_t crc32_of(const BitStream& s) {
    boost::crc_32_type crc;
    crc.process_bytes(s.bytes().data(), s.bytes().size());
    return crc.checksum();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// --- 1 ----------------------------------------------------------------------

Line oracle_equivalence() {
    const auto set = build_seed_set(0, kSetC);
    std::size_t mismatched = 0;
    for (const auto& t : set.members)
        if (generate_bits(t, kOracleBits).bits.to_string() != isolate_root_bits(t, kOracleBits).bits) ++mismatched;
    return {mismatched == 0 && set.members.size() == 1001,
            fmt("%zu seeds x %llu bits, %zu mismatching seeds", set.members.size(),
                static_cast<unsigned long long>(kOracleBits), mismatched)};
}

// --- 2 ----------------------------------------------------------------------

Line closure_and_injectivity() {
    std::mt19937_64 rng(20240601);
    std::uint64_t steps = 0, inadmissible = 0, not_inverse = 0, class_flips = 0;
    while (steps < kRandomSteps) {
        std::uniform_int_distribution<long> bd(-40, 40);
        const long b = bd(rng);
        const long cmin = std::max((b * b + 2) / 3, 1 - b);
        const long c = std::uniform_int_distribution<long>(cmin, cmin + 400)(rng);
        const long d = std::uniform_int_distribution<long>(-(b + c), -1)(rng);
        auto t = T(b, c, d);
        const int cls = sgn(t.discriminant_class());
        for (int k = 0; k < 500 && steps < kRandomSteps; ++k, ++steps) {
            auto next = step(t).next;
            if (!is_admissible(next.b(), next.c(), next.d())) ++inadmissible;
            const auto back = inverse_step(next);
            if (!back || !(*back == t)) ++not_inverse;
            if (sgn(next.discriminant_class()) != cls) ++class_flips;
            t = std::move(next);
        }
    }
    return {inadmissible == 0 && not_inverse == 0 && class_flips == 0,
            fmt("%llu steps: %llu inadmissible, %llu inverse failures, %llu class changes",
                static_cast<unsigned long long>(steps), static_cast<unsigned long long>(inadmissible),
                static_cast<unsigned long long>(not_inverse), static_cast<unsigned long long>(class_flips))};
}

// --- 3 ----------------------------------------------------------------------

Line source_point_equivalence() {
    std::size_t checked = 0, mismatched = 0;
    for (long b = -6; b <= 6; ++b)
        for (long c = 1; c <= 60; ++c)
            for (long d = -60; d <= -1; ++d) {
                if (!is_admissible(b, c, d)) continue;
                const auto t = T(b, c, d);
                ++checked;
                if (is_source_point(t).source == inverse_step(t).has_value()) ++mismatched;
            }
    return {mismatched == 0 && checked > 0, fmt("%zu triples, %zu mismatches", checked, mismatched)};
}

// --- 4 ----------------------------------------------------------------------

Line gap_bounds() {
    const auto set = build_seed_set(0, kSetC);
    const auto r = gap_report(set, kGapPrecision);
    // 1001/1004 < gap * 1001 < 1, checked on the certified interval ends.
    std::size_t outside = 0;
    const BigInt c(kSetC), wide(kSetC + 3);
    const DyadicRational one(1, 0);
    for (const auto& g : r.gaps)
        if (compare(g.lower * wide, one) < 0 || compare(g.upper * c, one) > 0) ++outside;
    const bool certified = compare(r.max_deviation_bound * BigInt(1001), DyadicRational(3, 0)) < 0;
    return {outside == 0 && r.gaps.size() == 1000 && r.max_deviation < kGapDeviationLimit && certified,
            fmt("%zu gaps, %zu outside bounds, max |gap*1001 - 1| = %.6g (limit %.6g, certified bound %s)",
                r.gaps.size(), outside, r.max_deviation, kGapDeviationLimit,
                r.max_deviation_bound.to_decimal(8).c_str())};
}

// --- 5 ----------------------------------------------------------------------

Line mt_fidelity() {
    std::mt19937 ref(kMtDefaultSeed);
    const auto ours = mt_outputs(kMtDefaultSeed, kRecurrenceEnd);
    std::size_t differing = 0;
    for (std::size_t i = 0; i < kMtOutputs; ++i) differing += ours[i] != ref();
    const auto m = load_recurrence_matrices();
    const auto rec = verify_recurrence(ours, m);
    const auto got = recover_matrices(ours);
    const bool recovered = got.a == m.a && got.b == m.b;
    return {differing == 0 && rec.pass && rec.checked == kRecurrenceEnd - 624 && recovered,
            fmt("%zu/%zu outputs differ from std::mt19937; recurrence %s on %zu indices; recovery %s", differing,
                kMtOutputs, rec.pass ? "holds" : "fails", rec.checked, recovered ? "exact" : "differs")};
}

// --- 6 ----------------------------------------------------------------------

struct ScanSummary {
    std::size_t matches = 0;
    std::size_t diagonal = 0;
    double chi2 = 0.0;
    double p = 0.0;
    bool count_ok = false;
};

ScanSummary summarize(std::span<const std::uint32_t> words, const RecurrenceMatrices& m) {
    const auto pairs = scan_conditions_ab(words, m);
    ScanSummary s;
    s.matches = pairs.size();
    std::array<double, 16> cells{};
    for (const auto& p : pairs) {
        s.diagonal += p.y_lag == p.y_n;
        cells[(p.y_lag / 64) * 4 + p.y_n / 64] += 1.0;
    }
    const double n = static_cast<double>(words.size() - 624);
    const double expected = n / 512.0;
    const double sigma = std::sqrt(n * (1.0 / 512.0) * (511.0 / 512.0));
    s.count_ok = std::abs(static_cast<double>(s.matches) - expected) <= kCountSigmas * sigma;
    const double per_cell = static_cast<double>(s.matches) / 16.0;
    for (double v : cells) s.chi2 += per_cell > 0 ? (v - per_cell) * (v - per_cell) / per_cell : 0.0;
    s.p = stats::igamc(15.0 / 2.0, s.chi2 / 2.0);
    return s;
}

Line diagonal_defect(const BitStream& cubic_bits, bool ci) {
    const auto m = load_recurrence_matrices();
    const auto mt = mt_outputs(kMtDefaultSeed, kScanWords);
    const auto ms = summarize(mt, m);
    const auto words = pack_words(cubic_bits).words;
    const auto cs = summarize(words, m);
    const bool mt_ok = ms.diagonal == ms.matches && ms.count_ok && ms.matches > 0;
    const bool cubic_ok = cs.count_ok && cs.p >= kChiSquareAlpha;
    return {mt_ok && cubic_ok,
            fmt("MT %zu words: %zu matches, %zu on diagonal, count %s; cubic %zu words (%s): %zu matches, "
                "%zu on diagonal, count %s, 4x4 chi2 = %.2f p = %.4f",
                mt.size(), ms.matches, ms.diagonal, ms.count_ok ? "in window" : "OUT of window", words.size(),
                ci ? "10^6-bit CI mode" : "10^7 bits", cs.matches, cs.diagonal, cs.count_ok ? "in window" : "OUT of window",
                cs.chi2, cs.p)};
}

// --- 7 ----------------------------------------------------------------------

std::vector<double> p_values(const stats::SuiteResult& r) {
    std::vector<double> out;
    for (const auto& t : r.reports) out.push_back(t.p_value);
    return out;
}

BitStream repeat(const std::string& unit, std::size_t times) {
    std::string s;
    for (std::size_t i = 0; i < times; ++i) s += unit;
    return BitStream::from_string(s);
}

bool degenerate_cases() {
    const auto zeros = BitStream::from_string(std::string(100, '0'));
    const auto alt = repeat("01", 50);
    const auto ones = BitStream::from_string(std::string(1 << 17, '1'));
    const auto m0 = stats::monobit(zeros), ma = stats::monobit(alt);
    bool ok = !m0.passed && m0.p_value < 1e-20 && ma.passed && ma.p_value == 1.0 && ma.statistic == 0.0 &&
              !stats::runs(alt).passed;
    for (const auto& t : stats::run_suite(ones).reports)
        if (t.name == "monobit" || t.name == "block_frequency" || t.name.starts_with("cumulative_sums"))
            ok = ok && !t.passed;
    return ok;
}

Line statistical_suite(const BitStream& cubic) {
    const auto first = stats::run_suite(cubic, kStatsAlpha, Execution::Parallel);
    const auto again = stats::run_suite(cubic, kStatsAlpha, Execution::Serial);
    const auto p = p_values(first);
    const bool rerun_equal = p == p_values(again);
    const bool golden_equal = p.size() == golden::kCubicPValues.size() &&
                              std::equal(p.begin(), p.end(), golden::kCubicPValues.begin());
    double oracle_gap = 0.0;
    for (std::size_t i = 0; i < p.size() && i < fixtures::kCubicPValues.size(); ++i)
        oracle_gap = std::max(oracle_gap, std::abs(p[i] - fixtures::kCubicPValues[i]));
    const bool oracle_ok = p.size() == fixtures::kCubicPValues.size() && oracle_gap < kOracleTolerance;
    const bool bits_ok = crc32_of(cubic) == fixtures::kCubicCrc32 && cubic.count_ones() == fixtures::kCubicOnes;
    const double min_p = *std::min_element(p.begin(), p.end());

    BitStream mt_bits;
    for (auto w : mt_outputs(kMtDefaultSeed, kStatsBits / 32))
        for (int k = 31; k >= 0; --k) mt_bits.push_back((w >> k) & 1u);
    const auto mt = stats::run_suite(mt_bits, kStatsAlpha);
    const bool mt_golden = p_values(mt) == std::vector<double>(golden::kMtPValues.begin(), golden::kMtPValues.end());
    const bool degenerate = degenerate_cases();

    return {bits_ok && first.all_passed() && min_p >= kStatsAlpha && rerun_equal && golden_equal && oracle_ok &&
                mt.all_passed() && mt_golden && degenerate,
            fmt("cubic 10^6 bits crc %s; %zu/%zu pass, min p = %.4f; rerun %s; golden %s; oracle max |dp| = %.2g; "
                "MT %zu/%zu pass, golden %s; degenerate cases %s",
                bits_ok ? "matches oracle" : "DIFFERS", first.passed, first.reports.size(), min_p,
                rerun_equal ? "identical" : "DIFFERS", golden_equal ? "exact" : "DIFFERS", oracle_gap, mt.passed,
                mt.reports.size(), mt_golden ? "exact" : "DIFFERS", degenerate ? "as specified" : "WRONG")};
}

// --- 8 ----------------------------------------------------------------------

Line merger_audits() {
    const auto a9 = merger_audit(build_seed_set(0, 9), kMergerHorizon);
    const auto a8 = merger_audit(build_seed_set(0, 8), kMergerHorizon);
    return {a9.pass && a8.pass, fmt("I(0,9): %s, I(0,8): %s over %llu steps", a9.pass ? "no shared state" : "MERGER",
                                    a8.pass ? "no shared state" : "MERGER",
                                    static_cast<unsigned long long>(kMergerHorizon))};
}

int record_golden(const std::string& path) {
    const auto cubic = generate_bits(T(0, 1, -1), kStatsBits).bits;
    BitStream mt_bits;
    for (auto w : mt_outputs(kMtDefaultSeed, kStatsBits / 32))
        for (int k = 31; k >= 0; --k) mt_bits.push_back((w >> k) & 1u);
    std::ofstream out(path);
    out << "// Recorded by `acceptance --record-golden`; P-values of the suite on 10^6 bits.\n"
        << "#pragma once\n\n#include <array>\n\nnamespace golden {\n\n";
    auto emit = [&](const char* name, const stats::SuiteResult& r) {
        out << "inline constexpr std::array<double, " << r.reports.size() << "> " << name << "{{\n";
        for (const auto& t : r.reports) out << "    " << fmt("%a", t.p_value) << ",  // " << t.name << '\n';
        out << "}};\n\n";
    };
    emit("kCubicPValues", stats::run_suite(cubic, kStatsAlpha));
    emit("kMtPValues", stats::run_suite(mt_bits, kStatsAlpha));
    out << "}  // namespace golden\n";
    return out ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    bool ci = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--ci") == 0) {
            ci = true;
        } else if (std::strcmp(argv[i], "--record-golden") == 0 && i + 1 < argc) {
            return record_golden(argv[i + 1]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--ci] [--record-golden PATH]\n");
            return 2;
        }
    }

    BitStream stats_bits, scan_bits;
    const std::function<Line()> criteria[] = {
        oracle_equivalence,
        closure_and_injectivity,
        source_point_equivalence,
        gap_bounds,
        mt_fidelity,
        [&] {
            scan_bits = generate_bits(T(0, 1, -1), ci ? kCiCubicBits : kFullCubicBits).bits;
            return diagonal_defect(scan_bits, ci);
        },
        [&] {
            stats_bits = scan_bits.size() >= kStatsBits ? BitStream::from_bytes(
                                                              std::span(scan_bits.bytes()).first(kStatsBits / 8), kStatsBits)
                                                        : generate_bits(T(0, 1, -1), kStatsBits).bits;
            return statistical_suite(stats_bits);
        },
        merger_audits,
    };

    int failed = 0;
    int index = 0;
    for (const auto& run : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Line line;
        try {
            line = run();
        } catch (const std::exception& e) {
            line = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %d: %s (%.1f s)\n", line.pass ? "PASS" : "FAIL", index, line.detail.c_str(), secs);
        std::fflush(stdout);
        failed += line.pass ? 0 : 1;
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}

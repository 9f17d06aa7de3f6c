// Command-line front end. Exit codes: 0 success, 1 analytic failure,
// 2 usage or I/O error.
#include "cubicprng/bitstream.hpp"
#include "cubicprng/exact_roots.hpp"
#include "cubicprng/mt19937.hpp"
#include "cubicprng/mt_analysis.hpp"
#include "cubicprng/orbit.hpp"
#include "cubicprng/seeds.hpp"
#include "cubicprng/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cubicprng;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Raw, Ascii, Words32Le, Csv, Json };

const std::map<std::string, Format> kFormats{{"raw", Format::Raw},
                                             {"ascii", Format::Ascii},
                                             {"words32le", Format::Words32Le},
                                             {"csv", Format::Csv},
                                             {"json", Format::Json}};

// Owns a file stream, or borrows stdout for "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw UsageError("cannot open output file " + path);
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }
    void close() {
        os().flush();
        if (!os()) throw UsageError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

BigInt parse_int(const std::string& s, const char* what) {
    BigInt x;
    if (s.empty() || x.set_str(s, 10) != 0) throw UsageError(std::string("bad integer for ") + what + ": " + s);
    return x;
}

void write_bits(std::ostream& os, const BitStream& bits, Format f, const json& meta) {
    switch (f) {
        case Format::Raw:
            os.write(reinterpret_cast<const char*>(bits.bytes().data()),
                     static_cast<std::streamsize>(bits.bytes().size()));
            break;
        case Format::Ascii:
            os << bits.to_string();
            break;
        case Format::Words32Le: {
            const auto packed = pack_words(bits);
            if (packed.dropped_bits != 0)
                std::cerr << "note: " << packed.dropped_bits << " trailing bits do not fill a word and were dropped\n";
            write_words_le(os, packed.words);
            break;
        }
        case Format::Csv:
            os << "index,bit\n";
            for (std::size_t i = 0; i < bits.size(); ++i) os << i << ',' << (bits[i] ? 1 : 0) << '\n';
            break;
        case Format::Json: {
            json j = meta;
            j["count"] = bits.size();
            j["bits"] = bits.to_string();
            os << j.dump(2) << '\n';
            break;
        }
    }
}

BitStream read_bits(const std::string& path, const std::string& format, std::optional<std::size_t> limit) {
    const std::string data = read_file(path);
    BitStream bits;
    if (format == "ascii") {
        std::string clean;
        for (char ch : data)
            if (ch == '0' || ch == '1')
                clean += ch;
            else if (!std::isspace(static_cast<unsigned char>(ch)))
                throw UsageError("ascii input contains a character other than 0/1");
        bits = BitStream::from_string(clean);
    } else if (format == "raw") {
        bits = BitStream::from_bytes(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()),
                                     data.size() * 8);
    } else if (format == "words32le") {
        bits = unpack_words(read_words_le(path));
    } else {
        throw UsageError("unsupported input format " + format);
    }
    if (limit && *limit < bits.size()) {
        BitStream head;
        head.reserve(*limit);
        for (std::size_t i = 0; i < *limit; ++i) head.push_back(bits[i]);
        bits = std::move(head);
    }
    return bits;
}

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("expected b,c but got " + s);
    try {
        return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("expected b,c but got " + s);
    }
}

json state_json(const OrbitState& st) {
    return {{"seed", {st.seed.b().get_str(), st.seed.c().get_str(), st.seed.d().get_str()}},
            {"step", st.step_index},
            {"triple", {st.triple.b().get_str(), st.triple.c().get_str(), st.triple.d().get_str()}}};
}

OrbitState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open state file " + path);
    return read_state(in);
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string b, c, d;
    std::uint64_t bits = 0;
    std::string format = "raw";
    std::string out = "-";
    std::string resume, checkpoint, seed_set;
    std::uint64_t per_seed_bits = 0, drop_prefix_bits = 0;
    std::size_t max_coefficient_bits = 0;
};

int run_generate(const GenerateArgs& a) {
    const Format f = kFormats.at(a.format);
    if (!a.seed_set.empty()) {
        if (a.per_seed_bits == 0) throw UsageError("--seed-set needs --per-seed-bits");
        const auto [b, c] = parse_pair(a.seed_set);
        const auto set = build_seed_set(b, c);
        const auto bits = generate_seed_set_bits(set, a.per_seed_bits, a.drop_prefix_bits);
        Output out(a.out);
        write_bits(out.os(), bits, f,
                   {{"seed_set", {b, c}}, {"per_seed_bits", a.per_seed_bits}, {"drop_prefix_bits", a.drop_prefix_bits}});
        out.close();
        return kOk;
    }

    std::optional<OrbitState> from;
    if (!a.resume.empty()) {
        from = load_state(a.resume);
    } else {
        if (a.b.empty() || a.c.empty() || a.d.empty()) throw UsageError("--b, --c and --d are required");
        from = OrbitState(validate_triple(parse_int(a.b, "--b"), parse_int(a.c, "--c"), parse_int(a.d, "--d")));
    }
    GenerateOptions opts;
    if (a.max_coefficient_bits != 0) opts.max_coefficient_bits = a.max_coefficient_bits;
    const auto result = generate_bits(*from, a.bits, opts);

    Output out(a.out);
    write_bits(out.os(), result.bits, f, {{"start", state_json(*from)}, {"end", state_json(result.state)}});
    out.close();
    if (!a.checkpoint.empty()) {
        Output cp(a.checkpoint);
        write_state(cp.os(), result.state);
        cp.close();
    }
    return kOk;
}

struct SeedsArgs {
    std::int64_t b = 0, c = 0;
    bool gaps = false;
    std::uint64_t precision = 64;
    std::uint64_t audit = 0;
    std::uint64_t distinctness = 0;
    std::string format = "json";
    std::string out = "-";
};

int run_seeds(const SeedsArgs& a) {
    const auto set = build_seed_set(a.b, a.c);
    Output out(a.out);
    if (a.format == "text") {
        out.os() << seed_set_text(set);
        out.close();
        return kOk;
    }
    bool ok = true;
    json j = to_json(set);
    if (a.gaps) {
        const auto r = gap_report(set, a.precision);
        j["gap_report"] = to_json(r);
        if (set.c > 2 * std::abs(set.b)) {
            const bool hold = gap_bounds_hold(set, r);
            j["gap_report"]["bounds_hold"] = hold;
            ok = ok && hold;
        }
    }
    if (a.audit != 0) {
        const auto audit = merger_audit(set, a.audit);
        j["merger_audit"] = to_json(audit);
        ok = ok && audit.pass;
    }
    if (a.distinctness != 0) j["distinctness"] = to_json(field_distinctness_check(set, a.distinctness), set);
    out.os() << j.dump(2) << '\n';
    out.close();
    return ok ? kOk : kFail;
}

struct MtArgs {
    std::uint64_t count = 10000;
    std::uint32_t seed = kMtDefaultSeed;
    std::string source = "mt";
    std::string in;
    std::string out = "-";
    std::string format = "words32le";
    std::string matrix_a, matrix_b;
};

std::vector<std::uint32_t> mt_input(const MtArgs& a) {
    if (a.source == "mt") return mt_outputs(a.seed, a.count);
    if (a.in.empty()) throw UsageError("--source file needs --in");
    auto words = read_words_le(a.in);
    if (a.count != 0 && a.count < words.size()) words.resize(a.count);
    return words;
}

RecurrenceMatrices reference_matrices(const MtArgs& a) {
    auto m = load_recurrence_matrices();
    if (!a.matrix_a.empty()) m.a = load_matrix_file(a.matrix_a);
    if (!a.matrix_b.empty()) m.b = load_matrix_file(a.matrix_b);
    return m;
}

int run_mt_gen(const MtArgs& a) {
    const auto words = mt_outputs(a.seed, a.count);
    Output out(a.out);
    if (a.format == "words32le") {
        write_words_le(out.os(), words);
    } else if (a.format == "text") {
        for (auto w : words) out.os() << w << '\n';
    } else {
        throw UsageError("mt gen formats: words32le, text");
    }
    out.close();
    return kOk;
}

int run_mt_verify(const MtArgs& a) {
    const auto words = mt_input(a);
    const auto r = verify_recurrence(words, reference_matrices(a));
    json j = {{"pass", r.pass}, {"checked", r.checked}};
    if (r.first_violation) j["first_violation"] = *r.first_violation;
    std::cout << j.dump(2) << '\n';
    return r.pass ? kOk : kFail;
}

int run_mt_recover(const MtArgs& a) {
    const auto words = mt_input(a);
    const auto got = recover_matrices(words);
    const auto ref = reference_matrices(a);
    auto diff = [](const Gf2Matrix32& x, const Gf2Matrix32& y) {
        json rows = json::array();
        for (int i = 1; i <= 32; ++i)
            if (x.row(i) != y.row(i)) rows.push_back(i);
        return rows;
    };
    const json da = diff(got.a, ref.a), db = diff(got.b, ref.b);
    const bool same = da.empty() && db.empty();
    json j = {{"match", same}, {"differing_rows_a", da}, {"differing_rows_b", db},
              {"crc32_a", matrix_checksum(got.a)}, {"crc32_b", matrix_checksum(got.b)}};
    if (a.out != "-") {
        Output fa(a.out + "/mt19937_matrix_A.txt");
        fa.os() << format_matrix(got.a);
        fa.close();
        Output fb(a.out + "/mt19937_matrix_B.txt");
        fb.os() << format_matrix(got.b);
        fb.close();
    }
    std::cout << j.dump(2) << '\n';
    return same ? kOk : kFail;
}

int run_mt_scan(const MtArgs& a) {
    const auto words = mt_input(a);
    const auto pairs = scan_conditions_ab(words, load_recurrence_matrices());
    Output out(a.out);
    write_lag_csv(out.os(), pairs);
    out.close();
    std::size_t diagonal = 0;
    for (const auto& p : pairs) diagonal += p.y_lag == p.y_n;
    std::cerr << "words " << words.size() << ", matches " << pairs.size() << ", on diagonal " << diagonal << '\n';
    return kOk;
}

struct StatsArgs {
    std::string in;
    std::string format = "raw";
    double alpha = stats::kDefaultAlpha;
    std::optional<std::size_t> bits;
};

int run_stats(const StatsArgs& a) {
    const auto bits = read_bits(a.in, a.format, a.bits);
    stats::SuiteResult r;
    try {
        r = stats::run_suite(bits, a.alpha);
    } catch (const stats::InputTooShort& e) {
        throw UsageError(e.what());
    }
    json j = stats::to_json(r);
    j["bits"] = bits.size();
    j["alpha"] = a.alpha;
    std::cout << j.dump(2) << '\n';
    return r.all_passed() ? kOk : kFail;
}

struct VerifyArgs {
    std::string b, c, d;
    std::uint64_t bits = 256;
    std::string state;
};

int run_verify(const VerifyArgs& a) {
    std::optional<CoeffTriple> seed;
    if (!a.b.empty() || !a.c.empty() || !a.d.empty())
        seed = validate_triple(parse_int(a.b, "--b"), parse_int(a.c, "--c"), parse_int(a.d, "--d"));

    std::optional<OrbitState> from;
    if (!a.state.empty()) {
        try {
            from = load_state(a.state);
        } catch (const ConditionViolation& e) {
            std::cout << json{{"pass", false}, {"error", e.what()}}.dump(2) << '\n';
            return kFail;
        }
        if (seed && !(from->seed == *seed)) throw UsageError("state file belongs to a different seed");
    } else {
        if (!seed) throw UsageError("--b, --c and --d (or --state) are required");
        from = OrbitState(*seed);
    }

    const auto got = generate_bits(*from, a.bits).bits.to_string();
    const auto want = isolate_root_bits(from->seed, from->step_index + a.bits).bits.substr(from->step_index);
    json j = {{"seed", {from->seed.b().get_str(), from->seed.c().get_str(), from->seed.d().get_str()}},
              {"offset", from->step_index},
              {"bits", a.bits}};
    std::optional<std::size_t> mismatch;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (got[i] != want[i]) {
            mismatch = i;
            break;
        }
    j["pass"] = !mismatch;
    if (mismatch) j["first_mismatch"] = from->step_index + *mismatch;
    std::cout << j.dump(2) << '\n';
    return mismatch ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cubic-orbit pseudorandom bits and analysis tools"};
    app.require_subcommand(1);

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "Emit bits of a root's binary expansion");
    gen->add_option("--b", ga.b, "x^2 coefficient");
    gen->add_option("--c", ga.c, "x coefficient");
    gen->add_option("--d", ga.d, "constant term");
    gen->add_option("--bits", ga.bits, "number of bits");
    gen->add_option("--format", ga.format)->check(CLI::IsMember({"raw", "ascii", "words32le", "csv", "json"}));
    gen->add_option("--out", ga.out, "output path, - for stdout");
    gen->add_option("--resume", ga.resume, "continue from a state file");
    gen->add_option("--checkpoint", ga.checkpoint, "write the final state here");
    gen->add_option("--seed-set", ga.seed_set, "generate from every member of the set b,c");
    gen->add_option("--per-seed-bits", ga.per_seed_bits, "bits generated per member (with --seed-set)");
    gen->add_option("--drop-prefix-bits", ga.drop_prefix_bits, "leading bits discarded per member");
    gen->add_option("--max-coefficient-bits", ga.max_coefficient_bits, "abort when coefficients grow past this");

    SeedsArgs sa;
    auto* seeds = app.add_subcommand("seeds", "Inspect an initial-point set");
    seeds->add_option("--b", sa.b)->required();
    seeds->add_option("--c", sa.c)->required();
    seeds->add_flag("--gaps", sa.gaps, "report root gaps");
    seeds->add_option("--precision", sa.precision, "root precision in bits");
    seeds->add_option("--audit-mergers", sa.audit, "iterate members this many steps looking for shared states");
    seeds->add_option("--distinctness", sa.distinctness, "trial-division bound for discriminant kernels");
    seeds->add_option("--format", sa.format)->check(CLI::IsMember({"json", "text"}));
    seeds->add_option("--out", sa.out);

    MtArgs ma;
    auto* mt = app.add_subcommand("mt", "MT19937 recurrence tools");
    mt->require_subcommand(1);
    auto add_mt_common = [&](CLI::App* sub, bool with_source) {
        sub->add_option("--count", ma.count, "number of 32-bit outputs");
        sub->add_option("--seed", ma.seed);
        if (with_source) {
            sub->add_option("--source", ma.source)->check(CLI::IsMember({"mt", "file"}));
            sub->add_option("--in", ma.in, "little-endian 32-bit words");
        }
    };
    auto* mt_gen = mt->add_subcommand("gen", "emit outputs");
    add_mt_common(mt_gen, false);
    mt_gen->add_option("--out", ma.out);
    mt_gen->add_option("--format", ma.format)->check(CLI::IsMember({"words32le", "text"}));
    auto* mt_verify = mt->add_subcommand("verify", "check the lag recurrence");
    add_mt_common(mt_verify, true);
    mt_verify->add_option("--matrix-a", ma.matrix_a);
    mt_verify->add_option("--matrix-b", ma.matrix_b);
    auto* mt_recover = mt->add_subcommand("recover", "solve for A and B and diff against the shipped data");
    add_mt_common(mt_recover, true);
    mt_recover->add_option("--matrix-a", ma.matrix_a);
    mt_recover->add_option("--matrix-b", ma.matrix_b);
    mt_recover->add_option("--out", ma.out, "directory for the recovered matrix files");
    auto* mt_scan = mt->add_subcommand("scan", "CSV of top-byte pairs where conditions (a),(b) hold");
    add_mt_common(mt_scan, true);
    mt_scan->add_option("--out", ma.out);

    StatsArgs st;
    auto* stats_cmd = app.add_subcommand("stats", "Run the randomness test suite");
    stats_cmd->add_option("--in", st.in)->required();
    stats_cmd->add_option("--format", st.format)->check(CLI::IsMember({"raw", "ascii", "words32le"}));
    stats_cmd->add_option("--alpha", st.alpha)->check(CLI::Range(0.0, 1.0));
    stats_cmd->add_option("--bits", st.bits, "use only the first N bits");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Compare generated bits with exact root isolation");
    verify->add_option("--b", va.b);
    verify->add_option("--c", va.c);
    verify->add_option("--d", va.d);
    verify->add_option("--bits", va.bits);
    verify->add_option("--state", va.state, "start from a checkpoint");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return run_generate(ga);
        if (*seeds) return run_seeds(sa);
        if (*mt_gen) return run_mt_gen(ma);
        if (*mt_verify) return run_mt_verify(ma);
        if (*mt_recover) return run_mt_recover(ma);
        if (*mt_scan) return run_mt_scan(ma);
        if (*stats_cmd) return run_stats(st);
        if (*verify) return run_verify(va);
    } catch (const ConditionViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CoefficientLimitExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

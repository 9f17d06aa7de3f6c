#include "cubicprng/stats.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>

namespace cubicprng::stats {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 1000000;

double log_gamma(double a) {
    int sign = 0;
    return ::lgamma_r(a, &sign);  // reentrant; std::lgamma writes signgam
}

// exp(-x + a ln x - ln Gamma(a)), the common prefactor of P and Q.
double gamma_prefactor(double a, double x) { return std::exp(-x + a * std::log(x) - log_gamma(a)); }

double lower_series(double a, double x) {
    double ap = a, term = 1.0 / a, sum = term;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * gamma_prefactor(a, x);
}

double upper_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h * gamma_prefactor(a, x);
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

TestReport make_report(std::string name, double statistic, double p, double alpha,
                       std::map<std::string, double> params = {}) {
    TestReport r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.p_value = clamp01(p);
    r.alpha = alpha;
    r.passed = r.p_value >= alpha;
    r.parameters = std::move(params);
    return r;
}

void require(bool ok, const char* test, const std::string& why) {
    if (!ok) throw InputTooShort(std::string(test) + ": " + why);
}

unsigned floor_log2(std::size_t n) { return n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n) - 1); }

// Counts of every overlapping m-bit pattern, wrapping around the end.
std::vector<std::uint64_t> pattern_counts(const BitStream& s, unsigned m) {
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    if (m == 0) {
        counts[0] = s.size();
        return counts;
    }
    const std::size_t n = s.size();
    const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    std::uint64_t window = 0;
    for (unsigned i = 0; i + 1 < m; ++i) window = (window << 1) | s[i % n];
    for (std::size_t i = 0; i < n; ++i) {
        window = ((window << 1) | s[(i + m - 1) % n]) & mask;
        ++counts[window];
    }
    return counts;
}

double psi_squared(const BitStream& s, unsigned m) {
    if (m == 0) return 0.0;
    const auto counts = pattern_counts(s, m);
    const double n = static_cast<double>(s.size());
    std::uint64_t sum = 0;  // exact: counts are bounded by n
    for (auto v : counts) sum += v * v;
    return static_cast<double>(sum) * std::ldexp(1.0, static_cast<int>(m)) / n - n;
}

double phi_entropy(const BitStream& s, unsigned m) {
    const auto counts = pattern_counts(s, m);
    const double n = static_cast<double>(s.size());
    // Neumaier summation; the caller subtracts two nearly equal phi values.
    double sum = 0.0, comp = 0.0;
    for (auto v : counts)
        if (v > 0) {
            const double p = static_cast<double>(v) / n;
            const double term = p * std::log(p);
            const double t = sum + term;
            comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
    return sum + comp;
}

double cusum_p_value(std::int64_t n, std::int64_t z) {
    // Integer divisions truncate toward zero, as in the reference code.
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double zd = static_cast<double>(z);
    double sum1 = 0.0;
    for (std::int64_t k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k)
        sum1 += normal_cdf((4.0 * k + 1) * zd / sqrt_n) - normal_cdf((4.0 * k - 1) * zd / sqrt_n);
    double sum2 = 0.0;
    for (std::int64_t k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k)
        sum2 += normal_cdf((4.0 * k + 3) * zd / sqrt_n) - normal_cdf((4.0 * k + 1) * zd / sqrt_n);
    return 1.0 - sum1 + sum2;
}

TestReport cusum_one(const BitStream& s, bool backward, double alpha) {
    const std::size_t n = s.size();
    std::int64_t sum = 0, z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += s[backward ? n - 1 - i : i] ? 1 : -1;
        z = std::max(z, sum < 0 ? -sum : sum);
    }
    const double p = cusum_p_value(static_cast<std::int64_t>(n), z);
    return make_report(backward ? "cumulative_sums_backward" : "cumulative_sums_forward", static_cast<double>(z), p,
                       alpha);
}

}  // namespace

double igamc(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("igamc: a must be positive");
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return clamp01(1.0 - lower_series(a, x));
    return clamp01(upper_fraction(a, x));
}

double igam(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("igam: a must be positive");
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return clamp01(lower_series(a, x));
    return clamp01(1.0 - upper_fraction(a, x));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TestReport monobit(const BitStream& s, double alpha) {
    require(s.size() >= 100, "monobit", "needs at least 100 bits");
    const double n = static_cast<double>(s.size());
    const double sum = 2.0 * static_cast<double>(s.count_ones()) - n;
    const double s_obs = std::abs(sum) / std::sqrt(n);
    return make_report("monobit", s_obs, std::erfc(s_obs / std::sqrt(2.0)), alpha);
}

TestReport block_frequency(const BitStream& s, std::size_t block, double alpha) {
    require(s.size() >= 100, "block_frequency", "needs at least 100 bits");
    require(block >= 2 && block <= s.size(), "block_frequency", "block length must be in [2, n]");
    const std::size_t blocks = s.size() / block;
    double chi2 = 0.0;
    for (std::size_t k = 0; k < blocks; ++k) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < block; ++j) ones += s[k * block + j];
        const double pi = static_cast<double>(ones) / static_cast<double>(block) - 0.5;
        chi2 += pi * pi;
    }
    chi2 *= 4.0 * static_cast<double>(block);
    return make_report("block_frequency", chi2, igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0), alpha,
                       {{"block_length", static_cast<double>(block)}, {"blocks", static_cast<double>(blocks)}});
}

TestReport runs(const BitStream& s, double alpha) {
    require(s.size() >= 100, "runs", "needs at least 100 bits");
    const double n = static_cast<double>(s.size());
    const double pi = static_cast<double>(s.count_ones()) / n;
    std::size_t v = 1;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) v += s[i] != s[i + 1];
    // Frequency prerequisite: a badly biased sequence fails outright.
    if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n))
        return make_report("runs", static_cast<double>(v), 0.0, alpha, {{"prerequisite_failed", 1.0}});
    const double num = std::abs(static_cast<double>(v) - 2.0 * n * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    return make_report("runs", static_cast<double>(v), std::erfc(num / den), alpha);
}

TestReport longest_run(const BitStream& s, double alpha) {
    require(s.size() >= 128, "longest_run", "needs at least 128 bits");
    struct Table {
        std::size_t block;
        unsigned low;  // first class: run <= low
        std::vector<double> pi;  // class probabilities as tabulated in SP 800-22
    };
    static const Table small{8, 1, {0.2148, 0.3672, 0.2305, 0.1875}};
    static const Table medium{128, 4, {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124}};
    static const Table large{10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
    const Table& t = s.size() >= 750000 ? large : s.size() >= 6272 ? medium : small;

    const std::size_t blocks = s.size() / t.block;
    const std::size_t classes = t.pi.size();
    std::vector<double> v(classes, 0.0);
    for (std::size_t k = 0; k < blocks; ++k) {
        unsigned run = 0, longest = 0;
        for (std::size_t j = 0; j < t.block; ++j) {
            run = s[k * t.block + j] ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        const std::size_t cls = longest <= t.low ? 0 : std::min<std::size_t>(longest - t.low, classes - 1);
        v[cls] += 1.0;
    }
    double chi2 = 0.0;
    for (std::size_t i = 0; i < classes; ++i) {
        const double expected = static_cast<double>(blocks) * t.pi[i];
        chi2 += (v[i] - expected) * (v[i] - expected) / expected;
    }
    return make_report("longest_run", chi2, igamc(static_cast<double>(classes - 1) / 2.0, chi2 / 2.0), alpha,
                       {{"block_length", static_cast<double>(t.block)}, {"blocks", static_cast<double>(blocks)}});
}

std::vector<TestReport> serial(const BitStream& s, unsigned m, double alpha) {
    require(m >= 3, "serial", "block length m must be >= 3");
    require(s.size() >= 8 && m + 2 < floor_log2(s.size()), "serial", "needs m < floor(log2 n) - 2");
    const double p0 = psi_squared(s, m), p1 = psi_squared(s, m - 1), p2 = psi_squared(s, m - 2);
    const double del1 = p0 - p1;
    const double del2 = p0 - 2.0 * p1 + p2;
    const std::map<std::string, double> params{{"m", static_cast<double>(m)}};
    return {make_report("serial_1", del1, igamc(std::ldexp(1.0, static_cast<int>(m) - 2), del1 / 2.0), alpha, params),
            make_report("serial_2", del2, igamc(std::ldexp(1.0, static_cast<int>(m) - 3), del2 / 2.0), alpha, params)};
}

std::vector<TestReport> cumulative_sums(const BitStream& s, double alpha) {
    require(s.size() >= 100, "cumulative_sums", "needs at least 100 bits");
    return {cusum_one(s, false, alpha), cusum_one(s, true, alpha)};
}

TestReport approximate_entropy(const BitStream& s, unsigned m, double alpha) {
    require(m >= 1, "approximate_entropy", "block length m must be >= 1");
    require(s.size() >= 64 && m + 5 < floor_log2(s.size()), "approximate_entropy", "needs m < floor(log2 n) - 5");
    const double apen = phi_entropy(s, m) - phi_entropy(s, m + 1);
    const double chi2 = 2.0 * static_cast<double>(s.size()) * (std::log(2.0) - apen);
    return make_report("approximate_entropy", chi2, igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi2 / 2.0), alpha,
                       {{"m", static_cast<double>(m)}, {"apen", apen}});
}

SuiteResult run_suite(const BitStream& s, double alpha, Execution exec) {
    const unsigned lg = floor_log2(s.size());
    const unsigned serial_m = std::min(16u, lg > 3 ? lg - 3 : 0u);
    const unsigned apen_m = std::min(10u, lg > 6 ? lg - 6 : 0u);

    using Task = std::function<std::vector<TestReport>()>;
    const std::vector<Task> tasks{
        [&] { return std::vector{monobit(s, alpha)}; },
        [&] { return std::vector{block_frequency(s, 128, alpha)}; },
        [&] { return std::vector{runs(s, alpha)}; },
        [&] { return std::vector{longest_run(s, alpha)}; },
        [&] { return serial(s, serial_m, alpha); },
        [&] { return cumulative_sums(s, alpha); },
        [&] { return std::vector{approximate_entropy(s, apen_m, alpha)}; },
    };
    std::vector<std::vector<TestReport>> results(tasks.size());
    const auto count = static_cast<std::ptrdiff_t>(tasks.size());
    if (exec == Execution::Parallel) {
        // Exceptions must not escape the parallel region; rethrow after it.
        std::vector<std::exception_ptr> errors(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                results[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) results[i] = tasks[i]();
    }

    SuiteResult out;
    for (auto& group : results)
        for (auto& r : group) {
            (r.passed ? out.passed : out.failed) += 1;
            out.reports.push_back(std::move(r));
        }
    return out;
}

nlohmann::json to_json(const TestReport& r) {
    return {{"name", r.name},         {"statistic", r.statistic},  {"p_value", r.p_value},
            {"alpha", r.alpha},       {"passed", r.passed},        {"parameters", r.parameters}};
}

nlohmann::json to_json(const SuiteResult& r) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& t : r.reports) reports.push_back(to_json(t));
    return {{"tests", std::move(reports)},
            {"summary", {{"passed", r.passed}, {"failed", r.failed}, {"all_passed", r.all_passed()}}}};
}

}  // namespace cubicprng::stats

// Desk-scale randomness tests following the NIST SP 800-22 definitions.
#pragma once

#include "cubicprng/bitstream.hpp"
#include "cubicprng/execution.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubicprng::stats {

inline constexpr double kDefaultAlpha = 0.01;

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction otherwise.
double igamc(double a, double x);
/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double igam(double a, double x);
/// Standard normal CDF.
double normal_cdf(double x);

class InputTooShort : public std::invalid_argument {
public:
    explicit InputTooShort(const std::string& what) : std::invalid_argument(what) {}
};

struct TestReport {
    std::string name;
    double statistic = 0.0;
    double p_value = 0.0;
    double alpha = kDefaultAlpha;
    bool passed = false;
    std::map<std::string, double> parameters;
};

// Minimum lengths: monobit, runs, cumulative sums 100 bits; block frequency
// 100 bits and n >= block; longest run 128 bits; serial m < log2(n) - 2;
// approximate entropy m < log2(n) - 5.
TestReport monobit(const BitStream& s, double alpha = kDefaultAlpha);
TestReport block_frequency(const BitStream& s, std::size_t block = 128, double alpha = kDefaultAlpha);
TestReport runs(const BitStream& s, double alpha = kDefaultAlpha);
TestReport longest_run(const BitStream& s, double alpha = kDefaultAlpha);
/// Two reports: the first and second differences of psi^2.
std::vector<TestReport> serial(const BitStream& s, unsigned m = 16, double alpha = kDefaultAlpha);
/// Two reports: forward and backward.
std::vector<TestReport> cumulative_sums(const BitStream& s, double alpha = kDefaultAlpha);
TestReport approximate_entropy(const BitStream& s, unsigned m = 10, double alpha = kDefaultAlpha);

struct SuiteResult {
    std::vector<TestReport> reports;
    std::size_t passed = 0;
    std::size_t failed = 0;
    bool all_passed() const noexcept { return failed == 0 && !reports.empty(); }
};

/// Every test at default parameters (serial and approximate-entropy block
/// lengths shrink for short inputs). Test order is fixed.
SuiteResult run_suite(const BitStream& s, double alpha = kDefaultAlpha, Execution exec = Execution::Parallel);

nlohmann::json to_json(const TestReport& r);
nlohmann::json to_json(const SuiteResult& r);

}  // namespace cubicprng::stats

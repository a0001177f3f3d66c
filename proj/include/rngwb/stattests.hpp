#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rngwb/bitstring.hpp"

namespace rngwb {

/// p-value in [0, 1]. NaN and out-of-range values are rejected at
/// construction; a failed computation is an error, never a PValue.
class PValue {
public:
    explicit PValue(double v);
    double value() const noexcept { return v_; }

private:
    double v_;
};

enum class Verdict { Pass, Weak, Fail, Skipped };

std::string_view verdict_name(Verdict v);

/// Two-tailed verdict bands. Fail means p outside [fail_low, fail_high];
/// weak bands are closed sub-intervals of the pass-or-weak region, graded
/// for reporting.
struct VerdictProfile {
    struct WeakBand {
        double lo;
        double hi;
        std::string grade;
    };

    std::string name;
    double fail_low = 0.0;
    double fail_high = 1.0;
    std::vector<WeakBand> weak_bands;

    /// Total probability mass of the fail region under a uniform p-value.
    double fail_tail_mass() const { return fail_low + (1.0 - fail_high); }
};

const VerdictProfile& nist_style_profile();
const VerdictProfile& dieharder_style_profile();
const VerdictProfile& testu01_style_profile();
const VerdictProfile& practrand_style_profile();
const VerdictProfile& profile_by_name(std::string_view name);

Verdict classify(const PValue& p, const VerdictProfile& profile);

/// One statistical test's result: statistic, p-value, verdict under the
/// profile that judged it.
struct TestOutcome {
    std::string test_name;
    double statistic = 0.0;
    double p = 0.0;  // meaningless when skipped
    Verdict verdict = Verdict::Skipped;
    std::string profile;
    std::string note;       // skip reason, tail direction, weak grade
    std::string sample_id;
    double millis = 0.0;
};

struct BatteryTotals {
    std::size_t failed = 0;
    std::size_t weak = 0;
    std::size_t passed = 0;
    std::size_t skipped = 0;
    // profile family -> (failed, weak), the per-suite breakdown.
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_suite;
};

struct BatteryReport {
    std::vector<TestOutcome> outcomes;
    double expected_false_failures = 0.0;

    BatteryTotals totals() const;
    std::string to_json() const;
};

// --- individual tests --------------------------------------------------

/// Frequency test: S = #ones - #zeros, p = erfc(|S| / sqrt(2n)). n >= 100.
TestOutcome monobit_p(const BitString& s);

/// Chi-square of per-block one-fractions against 1/2. n >= 100 * block_len.
TestOutcome block_frequency_p(const BitString& s, std::size_t block_len);

/// Total-runs test. Returns a skipped outcome when the ones-fraction falls
/// outside the standard applicability bound |pi - 1/2| < 2/sqrt(n).
TestOutcome runs_p(const BitString& s);

/// Overlapping 2-bit pattern test (serial test, first difference). n >= 1000.
TestOutcome serial2_p(const BitString& s);

/// Chi-square over the 256 byte values, 255 degrees of freedom. The reported
/// p is the upper tail, so two-tailed profiles flag suspiciously uniform
/// counts as well. Requires n >= 8 * 256 * 5; a non-byte tail is discarded.
TestOutcome chi2_bytes_p(const BitString& s);

struct EntStatistics {
    double shannon_bits_per_byte = 0.0;
    double mean_byte = 0.0;
    std::optional<double> monte_carlo_pi;  // empty if fewer than 6 bytes
    std::optional<double> scc;             // empty when variance is zero
    std::size_t bytes_used = 0;
    std::size_t discarded_bits = 0;
};

/// Byte-level summary statistics: Shannon entropy, mean byte, Monte-Carlo pi
/// from consecutive 6-byte (x, y) points against the inscribed circle, and
/// the serial correlation coefficient of successive bytes (circular).
EntStatistics ent_statistics(const BitString& s);

/// Mean-byte test via the CLT null (uniform bytes: mean 127.5).
TestOutcome ent_mean_p(const BitString& s);

/// Serial-correlation test via the Fisher transform. Skipped when the
/// coefficient is undefined (constant input).
TestOutcome ent_scc_p(const BitString& s);

/// Berlekamp-Massey linear complexity of a bit sequence.
std::size_t berlekamp_massey(const std::vector<std::uint8_t>& bits);

/// Per-block linear complexity against the standard 7-bin deviation
/// distribution. block_len in [500, 5000], n >= 100 * block_len.
TestOutcome linear_complexity_p(const BitString& s, std::size_t block_len);

// --- aggregation --------------------------------------------------------

struct TwoLevelResult {
    double uniformity_p = 0.0;
    bool uniformity_pass = false;
    double proportion = 0.0;
    double proportion_threshold = 0.0;
    bool proportion_pass = false;
    bool overall = false;
};

/// Two-level analysis of a p-value set: chi-square uniformity over 10 bins
/// (pass iff uniformity_p >= 1e-4) and the pass proportion against the
/// three-sigma binomial band around 0.99. Needs >= 10 p-values.
TwoLevelResult nist_two_level(const std::vector<double>& pvals);

/// Product of per-test type-2 error probabilities (independence assumed).
double combine_type2(const std::vector<double>& per_test);

// --- battery ------------------------------------------------------------

struct BatteryConfig {
    std::vector<std::string> enabled;                    // test names, run order
    std::map<std::string, std::string> test_profiles;   // test -> profile name
    std::size_t block_frequency_block_len = 128;
    std::size_t linear_complexity_block_len = 500;

    static const std::vector<std::string>& known_tests();
    static BatteryConfig defaults();  // every test, default profile mapping
    static BatteryConfig from_json(const std::string& text);
    std::string to_json() const;

    const VerdictProfile& profile_for(const std::string& test) const;
};

/// Expected false-failure count for one run of this battery under a uniform
/// source: the sum of each enabled test's fail-region tail mass.
double battery_false_failure_budget(const BatteryConfig& config);

/// Runs the enabled tests in order. Tests whose size preconditions fail are
/// reported as skipped, not failed. Deterministic given input and config.
BatteryReport run_battery(const BitString& s, const BatteryConfig& config);

}  // namespace rngwb

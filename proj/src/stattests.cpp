#include "rngwb/stattests.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "rngwb/special.hpp"

namespace rngwb {

PValue::PValue(double v) : v_(v) {
    if (std::isnan(v) || v < 0.0 || v > 1.0)
        throw std::invalid_argument("p-value must lie in [0, 1]");
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Weak: return "weak";
        case Verdict::Fail: return "fail";
        case Verdict::Skipped: return "skipped";
    }
    return "?";
}

const VerdictProfile& nist_style_profile() {
    static const VerdictProfile p{"nist-style", 0.005, 0.995, {}};
    return p;
}

const VerdictProfile& dieharder_style_profile() {
    static const VerdictProfile p{"dieharder-style",
                                  0.0005,
                                  0.9995,
                                  {{0.0005, 0.005, "weak"}, {0.995, 0.9995, "weak"}}};
    return p;
}

const VerdictProfile& testu01_style_profile() {
    static const VerdictProfile p{"testu01-style", 0.001, 0.999, {}};
    return p;
}

const VerdictProfile& practrand_style_profile() {
    static const VerdictProfile p{"practrand-style",
                                  1e-11,
                                  1.0 - 1e-11,
                                  {{1e-11, 1e-6, "suspicious"},
                                   {1e-6, 1e-4, "unusual"},
                                   {1.0 - 1e-4, 1.0 - 1e-6, "unusual"},
                                   {1.0 - 1e-6, 1.0 - 1e-11, "suspicious"}}};
    return p;
}

const VerdictProfile& profile_by_name(std::string_view name) {
    if (name == "nist-style") return nist_style_profile();
    if (name == "dieharder-style") return dieharder_style_profile();
    if (name == "testu01-style") return testu01_style_profile();
    if (name == "practrand-style") return practrand_style_profile();
    throw std::invalid_argument("unknown verdict profile: " + std::string(name));
}

Verdict classify(const PValue& p, const VerdictProfile& profile) {
    const double v = p.value();
    if (v < profile.fail_low || v > profile.fail_high) return Verdict::Fail;
    for (const auto& band : profile.weak_bands)
        if (v >= band.lo && v <= band.hi) return Verdict::Weak;
    return Verdict::Pass;
}

// --- helpers -------------------------------------------------------------

namespace {

std::vector<std::uint8_t> unpack_bits(const BitString& s) {
    std::vector<std::uint8_t> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = static_cast<std::uint8_t>(s.bit(i));
    return v;
}

TestOutcome make_outcome(std::string name, double statistic, double p) {
    TestOutcome o;
    o.test_name = std::move(name);
    o.statistic = statistic;
    o.p = PValue(p).value();
    o.verdict = Verdict::Pass;  // battery assigns the real verdict
    return o;
}

TestOutcome make_skipped(std::string name, std::string reason) {
    TestOutcome o;
    o.test_name = std::move(name);
    o.verdict = Verdict::Skipped;
    o.note = std::move(reason);
    return o;
}

}  // namespace

// --- individual tests ----------------------------------------------------

TestOutcome monobit_p(const BitString& s) {
    if (s.size() < 100) throw std::invalid_argument("monobit: need at least 100 bits");
    const double ones = static_cast<double>(s.count_ones());
    const double n = static_cast<double>(s.size());
    const double statistic = 2.0 * ones - n;  // #ones - #zeros
    const double p = std::erfc(std::fabs(statistic) / std::sqrt(2.0 * n));
    return make_outcome("monobit", statistic, p);
}

TestOutcome block_frequency_p(const BitString& s, std::size_t block_len) {
    if (block_len == 0) throw std::invalid_argument("block_frequency: block_len must be >= 1");
    if (s.size() < 100 * block_len)
        throw std::invalid_argument("block_frequency: need at least 100 blocks");
    const std::size_t blocks = s.size() / block_len;
    double chi2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < block_len; ++i) ones += s.bit(b * block_len + i);
        const double pi = static_cast<double>(ones) / static_cast<double>(block_len);
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * static_cast<double>(block_len);
    const double p = igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0);
    return make_outcome("block_frequency", chi2, p);
}

TestOutcome runs_p(const BitString& s) {
    if (s.size() < 100) throw std::invalid_argument("runs: need at least 100 bits");
    const double n = static_cast<double>(s.size());
    const double pi = static_cast<double>(s.count_ones()) / n;
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n))
        return make_skipped("runs", "ones-fraction outside applicability bound");
    std::size_t v = 1;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s.bit(i) != s.bit(i + 1)) ++v;
    const double vn = static_cast<double>(v);
    const double p =
        std::erfc(std::fabs(vn - 2.0 * n * pi * (1.0 - pi)) /
                  (2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi)));
    return make_outcome("runs", vn, p);
}

TestOutcome serial2_p(const BitString& s) {
    if (s.size() < 1000) throw std::invalid_argument("serial2: need at least 1000 bits");
    const std::size_t n = s.size();
    std::size_t c1 = 0;
    std::size_t pair_counts[4] = {0, 0, 0, 0};
    int prev = s.bit(0);
    c1 += static_cast<std::size_t>(prev);
    for (std::size_t i = 1; i < n; ++i) {
        const int cur = s.bit(i);
        c1 += static_cast<std::size_t>(cur);
        ++pair_counts[(prev << 1) | cur];
        prev = cur;
    }
    ++pair_counts[(prev << 1) | s.bit(0)];  // circular closure
    const double dn = static_cast<double>(n);
    double psi2 = 0.0;
    for (std::size_t c : pair_counts) psi2 += static_cast<double>(c) * static_cast<double>(c);
    psi2 = psi2 * 4.0 / dn - dn;
    const double c0 = dn - static_cast<double>(c1);
    const double psi1 =
        (static_cast<double>(c1) * static_cast<double>(c1) + c0 * c0) * 2.0 / dn - dn;
    const double del = psi2 - psi1;
    const double p = igamc(1.0, std::max(0.0, del) / 2.0);
    return make_outcome("serial2", del, p);
}

TestOutcome chi2_bytes_p(const BitString& s) {
    if (s.size() < 8 * 256 * 5)
        throw std::invalid_argument("chi2_bytes: need at least 5 expected counts per cell");
    const std::size_t nbytes = s.size() / 8;
    const auto& raw = s.bytes();
    std::size_t counts[256] = {};
    for (std::size_t i = 0; i < nbytes; ++i) ++counts[raw[i]];
    const double expected = static_cast<double>(nbytes) / 256.0;
    double chi2 = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    const double p = igamc(255.0 / 2.0, chi2 / 2.0);
    TestOutcome o = make_outcome("chi2_bytes", chi2, p);
    if (s.size() % 8 != 0) o.note = "non-byte tail discarded";
    if (p > 0.995) o.note += (o.note.empty() ? "" : "; ") + std::string("suspiciously uniform");
    return o;
}

EntStatistics ent_statistics(const BitString& s) {
    if (s.size() < 8 * 6) throw std::invalid_argument("ent: need at least 6 bytes");
    EntStatistics st;
    st.bytes_used = s.size() / 8;
    st.discarded_bits = s.size() % 8;
    const auto& raw = s.bytes();
    const std::size_t n = st.bytes_used;

    std::size_t counts[256] = {};
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ++counts[raw[i]];
        sum += raw[i];
    }
    st.mean_byte = sum / static_cast<double>(n);

    double entropy = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double f = static_cast<double>(c) / static_cast<double>(n);
        entropy -= f * std::log2(f);
    }
    st.shannon_bits_per_byte = entropy;

    // Monte-Carlo pi: 6 bytes per point, 24-bit coordinates, inscribed
    // quarter circle of radius 2^24 - 1.
    const std::size_t points = n / 6;
    if (points > 0) {
        constexpr std::uint64_t kRadius = (1u << 24) - 1;
        constexpr std::uint64_t kRadius2 = kRadius * kRadius;
        std::size_t inside = 0;
        for (std::size_t p = 0; p < points; ++p) {
            const std::size_t b = p * 6;
            const std::uint64_t x = (std::uint64_t(raw[b]) << 16) | (std::uint64_t(raw[b + 1]) << 8) |
                                    raw[b + 2];
            const std::uint64_t y = (std::uint64_t(raw[b + 3]) << 16) |
                                    (std::uint64_t(raw[b + 4]) << 8) | raw[b + 5];
            if (x * x + y * y <= kRadius2) ++inside;
        }
        st.monte_carlo_pi = 4.0 * static_cast<double>(inside) / static_cast<double>(points);
    }

    // Serial correlation of successive bytes, circular.
    double sum_sq = 0.0, sum_adj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = raw[i];
        sum_sq += u * u;
        sum_adj += u * static_cast<double>(raw[(i + 1) % n]);
    }
    const double dn = static_cast<double>(n);
    const double den = dn * sum_sq - sum * sum;
    if (den != 0.0) st.scc = (dn * sum_adj - sum * sum) / den;
    return st;
}

TestOutcome ent_mean_p(const BitString& s) {
    const EntStatistics st = ent_statistics(s);
    const double sigma = std::sqrt(65535.0 / 12.0);  // uniform byte stddev
    const double z = (st.mean_byte - 127.5) / (sigma / std::sqrt(static_cast<double>(st.bytes_used)));
    return make_outcome("ent_mean", st.mean_byte, normal_two_sided_p(z));
}

TestOutcome ent_scc_p(const BitString& s) {
    const EntStatistics st = ent_statistics(s);
    if (!st.scc) return make_skipped("ent_scc", "serial correlation undefined (zero variance)");
    const double r = *st.scc;
    if (st.bytes_used < 4) return make_skipped("ent_scc", "too few bytes for Fisher transform");
    double p;
    if (std::fabs(r) >= 1.0 - 1e-15) {
        p = 0.0;
    } else {
        const double z = std::atanh(r) * std::sqrt(static_cast<double>(st.bytes_used - 3));
        p = normal_two_sided_p(z);
    }
    return make_outcome("ent_scc", r, p);
}

std::size_t berlekamp_massey(const std::vector<std::uint8_t>& bits) {
    const std::size_t n = bits.size();
    std::vector<std::uint8_t> c(n + 1, 0), b(n + 1, 0), t;
    c[0] = b[0] = 1;
    std::size_t L = 0;
    std::ptrdiff_t m = -1;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t d = bits[i];
        for (std::size_t j = 1; j <= L; ++j) d ^= static_cast<std::uint8_t>(c[j] & bits[i - j]);
        if (d == 0) continue;
        t = c;
        const std::size_t shift = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) - m);
        for (std::size_t j = 0; j + shift <= n; ++j) c[j + shift] ^= b[j];
        if (2 * L <= i) {
            L = i + 1 - L;
            m = static_cast<std::ptrdiff_t>(i);
            b = std::move(t);
        }
    }
    return L;
}

TestOutcome linear_complexity_p(const BitString& s, std::size_t block_len) {
    if (block_len < 500 || block_len > 5000)
        throw std::invalid_argument("linear_complexity: block_len must lie in [500, 5000]");
    if (s.size() < 100 * block_len)
        throw std::invalid_argument("linear_complexity: need at least 100 blocks");
    const std::size_t blocks = s.size() / block_len;
    const double M = static_cast<double>(block_len);
    const double sign = (block_len % 2 == 0) ? 1.0 : -1.0;  // (-1)^M
    const double mu = M / 2.0 + (9.0 - sign) / 36.0 - (M / 3.0 + 2.0 / 9.0) / std::pow(2.0, M);

    static const double pi_bins[7] = {0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};
    std::size_t nu[7] = {};
    std::vector<std::uint8_t> block(block_len);
    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t i = 0; i < block_len; ++i)
            block[i] = static_cast<std::uint8_t>(s.bit(b * block_len + i));
        const double L = static_cast<double>(berlekamp_massey(block));
        const double T = sign * (L - mu) + 2.0 / 9.0;
        int bin;
        if (T <= -2.5)
            bin = 0;
        else if (T <= -1.5)
            bin = 1;
        else if (T <= -0.5)
            bin = 2;
        else if (T <= 0.5)
            bin = 3;
        else if (T <= 1.5)
            bin = 4;
        else if (T <= 2.5)
            bin = 5;
        else
            bin = 6;
        ++nu[bin];
    }
    double chi2 = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double expected = static_cast<double>(blocks) * pi_bins[i];
        const double d = static_cast<double>(nu[i]) - expected;
        chi2 += d * d / expected;
    }
    const double p = igamc(3.0, chi2 / 2.0);
    return make_outcome("linear_complexity", chi2, p);
}

// --- aggregation -----------------------------------------------------------

TwoLevelResult nist_two_level(const std::vector<double>& pvals) {
    if (pvals.size() < 10)
        throw std::invalid_argument("two-level analysis needs at least 10 p-values");
    const double n = static_cast<double>(pvals.size());

    std::size_t bins[10] = {};
    std::size_t in_range = 0;
    for (double p : pvals) {
        PValue checked(p);
        const int idx = std::min(9, static_cast<int>(checked.value() * 10.0));
        ++bins[idx];
        if (p >= 0.005 && p <= 0.995) ++in_range;
    }
    const double expected = n / 10.0;
    double chi2 = 0.0;
    for (std::size_t c : bins) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }

    TwoLevelResult r;
    r.uniformity_p = igamc(4.5, chi2 / 2.0);
    r.uniformity_pass = r.uniformity_p >= 1e-4;
    r.proportion = static_cast<double>(in_range) / n;
    r.proportion_threshold = 0.99 - 3.0 * std::sqrt(0.99 * 0.01 / n);
    r.proportion_pass = r.proportion >= r.proportion_threshold;
    r.overall = r.uniformity_pass && r.proportion_pass;
    return r;
}

double combine_type2(const std::vector<double>& per_test) {
    double product = 1.0;
    for (double p : per_test) {
        if (std::isnan(p) || p < 0.0 || p > 1.0)
            throw std::invalid_argument("type-2 probability out of [0, 1]");
        product *= p;
    }
    return product;
}

// --- battery -----------------------------------------------------------------

const std::vector<std::string>& BatteryConfig::known_tests() {
    static const std::vector<std::string> tests = {
        "monobit",  "block_frequency", "runs",    "serial2",
        "chi2_bytes", "ent_mean",      "ent_scc", "linear_complexity"};
    return tests;
}

BatteryConfig BatteryConfig::defaults() {
    BatteryConfig c;
    c.enabled = known_tests();
    c.test_profiles = {
        {"monobit", "nist-style"},        {"block_frequency", "nist-style"},
        {"runs", "nist-style"},           {"serial2", "nist-style"},
        {"chi2_bytes", "dieharder-style"}, {"ent_mean", "nist-style"},
        {"ent_scc", "nist-style"},        {"linear_complexity", "practrand-style"}};
    return c;
}

const VerdictProfile& BatteryConfig::profile_for(const std::string& test) const {
    const auto it = test_profiles.find(test);
    if (it == test_profiles.end()) return nist_style_profile();
    return profile_by_name(it->second);
}

BatteryConfig BatteryConfig::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    BatteryConfig c = defaults();
    if (j.contains("enabled")) c.enabled = j.at("enabled").get<std::vector<std::string>>();
    if (j.contains("test_profiles"))
        for (const auto& [k, v] : j.at("test_profiles").items())
            c.test_profiles[k] = v.get<std::string>();
    c.block_frequency_block_len = j.value("block_frequency_block_len", c.block_frequency_block_len);
    c.linear_complexity_block_len =
        j.value("linear_complexity_block_len", c.linear_complexity_block_len);
    for (const auto& t : c.enabled)
        if (std::find(known_tests().begin(), known_tests().end(), t) == known_tests().end())
            throw std::invalid_argument("unknown test in config: " + t);
    return c;
}

std::string BatteryConfig::to_json() const {
    nlohmann::json j;
    j["enabled"] = enabled;
    j["test_profiles"] = test_profiles;
    j["block_frequency_block_len"] = block_frequency_block_len;
    j["linear_complexity_block_len"] = linear_complexity_block_len;
    return j.dump(2);
}

double battery_false_failure_budget(const BatteryConfig& config) {
    double mass = 0.0;
    for (const auto& t : config.enabled) mass += config.profile_for(t).fail_tail_mass();
    return mass;
}

BatteryReport run_battery(const BitString& s, const BatteryConfig& config) {
    if (config.enabled.empty()) throw std::invalid_argument("battery config enables no tests");
    BatteryReport report;
    report.expected_false_failures = battery_false_failure_budget(config);

    for (const std::string& name : config.enabled) {
        const auto started = std::chrono::steady_clock::now();
        TestOutcome o;
        try {
            if (name == "monobit")
                o = monobit_p(s);
            else if (name == "block_frequency")
                o = block_frequency_p(s, config.block_frequency_block_len);
            else if (name == "runs")
                o = runs_p(s);
            else if (name == "serial2")
                o = serial2_p(s);
            else if (name == "chi2_bytes")
                o = chi2_bytes_p(s);
            else if (name == "ent_mean")
                o = ent_mean_p(s);
            else if (name == "ent_scc")
                o = ent_scc_p(s);
            else if (name == "linear_complexity")
                o = linear_complexity_p(s, config.linear_complexity_block_len);
            else
                throw std::invalid_argument("unknown test: " + name);
        } catch (const std::invalid_argument& e) {
            o = make_skipped(name, e.what());
        }
        const VerdictProfile& profile = config.profile_for(name);
        o.profile = profile.name;
        if (o.verdict != Verdict::Skipped) {
            const PValue p(o.p);
            o.verdict = classify(p, profile);
            if (o.verdict == Verdict::Weak) {
                for (const auto& band : profile.weak_bands)
                    if (o.p >= band.lo && o.p <= band.hi) {
                        o.note += (o.note.empty() ? "" : "; ") + band.grade;
                        break;
                    }
            }
        }
        o.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started)
                       .count();
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

BatteryTotals BatteryReport::totals() const {
    BatteryTotals t;
    for (const auto& o : outcomes) {
        auto& suite = t.per_suite[o.profile.empty() ? "unassigned" : o.profile];
        switch (o.verdict) {
            case Verdict::Fail:
                ++t.failed;
                ++suite.first;
                break;
            case Verdict::Weak:
                ++t.weak;
                ++suite.second;
                break;
            case Verdict::Pass: ++t.passed; break;
            case Verdict::Skipped: ++t.skipped; break;
        }
    }
    return t;
}

std::string BatteryReport::to_json() const {
    nlohmann::json j;
    j["outcomes"] = nlohmann::json::array();
    for (const auto& o : outcomes) {
        nlohmann::json e;
        e["test"] = o.test_name;
        e["statistic"] = o.statistic;
        if (o.verdict != Verdict::Skipped) e["p"] = o.p;
        e["verdict"] = std::string(verdict_name(o.verdict));
        e["profile"] = o.profile;
        if (!o.note.empty()) e["note"] = o.note;
        if (!o.sample_id.empty()) e["sample_id"] = o.sample_id;
        e["millis"] = o.millis;
        j["outcomes"].push_back(std::move(e));
    }
    const BatteryTotals t = totals();
    j["totals"]["failed"] = t.failed;
    j["totals"]["weak"] = t.weak;
    j["totals"]["passed"] = t.passed;
    j["totals"]["skipped"] = t.skipped;
    for (const auto& [suite, counts] : t.per_suite) {
        j["totals"]["per_suite"][suite]["failed"] = counts.first;
        j["totals"]["per_suite"][suite]["weak"] = counts.second;
    }
    j["expected_false_failures"] = expected_false_failures;
    return j.dump(2);
}

}  // namespace rngwb

#include "rngwb/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rngwb {

namespace {

bool is_subset(const std::vector<std::string>& sub, const std::vector<std::string>& super) {
    return std::all_of(sub.begin(), sub.end(), [&](const std::string& t) {
        return std::find(super.begin(), super.end(), t) != super.end();
    });
}

}  // namespace

ProfileSet ProfileSet::defaults() {
    ProfileSet p;
    p.all = {"all", BatteryConfig::known_tests()};
    // The recommended subset drops the two tests most correlated with ones
    // it keeps (block frequency with monobit, the 2-bit serial test with
    // runs); detection power at this scale comes from the rest.
    p.recommended = {"recommended",
                     {"monobit", "runs", "chi2_bytes", "ent_mean", "ent_scc", "linear_complexity"}};
    p.light = {"light", {"monobit", "runs", "chi2_bytes"}};
    p.validate();
    return p;
}

void ProfileSet::validate() const {
    if (!is_subset(light.tests, all.tests))
        throw std::invalid_argument("profile rule violated: light must be a subset of all");
    if (!is_subset(recommended.tests, all.tests))
        throw std::invalid_argument("profile rule violated: recommended must be a subset of all");
}

ProfileSet ProfileSet::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ProfileSet p = defaults();
    auto load = [&](const char* key, Profile& target) {
        if (j.contains(key)) target.tests = j.at(key).get<std::vector<std::string>>();
    };
    load("light", p.light);
    load("recommended", p.recommended);
    load("all", p.all);
    p.validate();
    return p;
}

std::string ProfileSet::to_json() const {
    nlohmann::json j;
    j["light"] = light.tests;
    j["recommended"] = recommended.tests;
    j["all"] = all.tests;
    return j.dump(2);
}

const Profile& ProfileSet::by_name(std::string_view name) const {
    if (name == "light") return light;
    if (name == "recommended") return recommended;
    if (name == "all") return all;
    throw std::invalid_argument("unknown profile: " + std::string(name));
}

BatteryConfig config_for_profile(const Profile& profile, BatteryConfig base) {
    base.enabled = profile.tests;
    return base;
}

BatteryReport run_profile(const BitString& input, std::string_view profile_name,
                          const ProfileSet& profiles, const BatteryConfig& base) {
    const Profile& profile = profiles.by_name(profile_name);
    return run_battery(input, config_for_profile(profile, base));
}

double expected_false_failures(const std::vector<std::pair<std::size_t, double>>& tests) {
    double sum = 0.0;
    for (const auto& [count, tail_mass] : tests) {
        if (!(tail_mass > 0.0 && tail_mass < 1.0))
            throw std::invalid_argument("tail mass must lie in (0, 1)");
        sum += static_cast<double>(count) * tail_mass;
    }
    return sum;
}

ComparisonReport compare_levels(const std::map<int, BatteryReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("compare_levels: no reports");
    ComparisonReport cr;
    for (const auto& [level, report] : reports) {
        const BatteryTotals t = report.totals();
        LevelEntry e;
        e.level = level;
        e.failed = t.failed;
        e.failed_plus_weak = t.failed + t.weak;
        e.log2_failed = std::log2(static_cast<double>(e.failed) + 1.0);
        e.log2_failed_weak = std::log2(static_cast<double>(e.failed_plus_weak) + 1.0);
        e.budget = report.expected_false_failures;
        e.success = static_cast<double>(e.failed) < e.budget;
        cr.levels.push_back(e);
    }
    cr.monotone_improvement = std::is_sorted(
        cr.levels.begin(), cr.levels.end(),
        [](const LevelEntry& a, const LevelEntry& b) { return a.failed >= b.failed; });
    return cr;
}

std::string ComparisonReport::to_json() const {
    nlohmann::json j;
    j["levels"] = nlohmann::json::array();
    for (const LevelEntry& e : levels) {
        nlohmann::json entry;
        entry["level"] = e.level;
        entry["failed"] = e.failed;
        entry["failed_plus_weak"] = e.failed_plus_weak;
        entry["log2_failed"] = e.log2_failed;
        entry["log2_failed_weak"] = e.log2_failed_weak;
        entry["budget"] = e.budget;
        entry["success"] = e.success;
        j["levels"].push_back(std::move(entry));
    }
    j["monotone_improvement"] = monotone_improvement;
    return j.dump(2);
}

std::string ComparisonReport::to_plot_csv() const {
    std::ostringstream out;
    out << "level,failed,failed_plus_weak,log2_failed,log2_failed_weak,success_boundary\n";
    for (const LevelEntry& e : levels) {
        out << e.level << ',' << e.failed << ',' << e.failed_plus_weak << ',' << e.log2_failed
            << ',' << e.log2_failed_weak << ',' << std::log2(e.budget + 1.0) << '\n';
    }
    return out.str();
}

std::string render_table(const BatteryReport& report) {
    const BatteryTotals totals = report.totals();
    std::ostringstream out;

    out << "test                 statistic          p-value      verdict  note\n";
    out << "-------------------- ------------------ ------------ -------- ----------------\n";
    char line[256];
    for (const TestOutcome& o : report.outcomes) {
        if (o.verdict == Verdict::Skipped) {
            std::snprintf(line, sizeof(line), "%-20s %-18s %-12s %-8s %s\n", o.test_name.c_str(),
                          "-", "-", "skipped", o.note.c_str());
        } else {
            std::snprintf(line, sizeof(line), "%-20s %-18.6g %-12.4g %-8s %s\n",
                          o.test_name.c_str(), o.statistic, o.p,
                          std::string(verdict_name(o.verdict)).c_str(), o.note.c_str());
        }
        out << line;
    }
    out << "\nper-suite breakdown (failed tests left, suspicious in parentheses):\n";
    for (const auto& [suite, counts] : totals.per_suite) {
        std::snprintf(line, sizeof(line), "  %-20s %zu (%zu)\n", suite.c_str(), counts.first,
                      counts.second);
        out << line;
    }
    std::snprintf(line, sizeof(line),
                  "totals: %zu failed, %zu weak, %zu passed, %zu skipped "
                  "(false-failure budget %.4f)\n",
                  totals.failed, totals.weak, totals.passed, totals.skipped,
                  report.expected_false_failures);
    out << line;
    return out.str();
}

}  // namespace rngwb

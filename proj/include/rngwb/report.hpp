#pragma once

#include <map>
#include <string>
#include <vector>

#include "rngwb/stattests.hpp"

namespace rngwb {

/// Named test subset. light and recommended must be subsets of all; this is
/// asserted whenever a profile set is constructed or loaded.
struct Profile {
    std::string name;
    std::vector<std::string> tests;
};

struct ProfileSet {
    Profile light;
    Profile recommended;
    Profile all;

    static ProfileSet defaults();
    static ProfileSet from_json(const std::string& text);
    std::string to_json() const;
    const Profile& by_name(std::string_view name) const;
    void validate() const;  // subset rule
};

/// Battery configuration restricted to a profile's test subset.
BatteryConfig config_for_profile(const Profile& profile, BatteryConfig base = BatteryConfig::defaults());

/// Runs the profile's test subset over the input.
BatteryReport run_profile(const BitString& input, std::string_view profile_name,
                          const ProfileSet& profiles = ProfileSet::defaults(),
                          const BatteryConfig& base = BatteryConfig::defaults());

/// Expected number of falsely failed tests across (count, tail_mass) test
/// families, assuming independence: sum of count * tail_mass.
double expected_false_failures(const std::vector<std::pair<std::size_t, double>>& tests);

struct LevelEntry {
    int level = 0;
    std::size_t failed = 0;
    std::size_t failed_plus_weak = 0;
    double log2_failed = 0.0;       // log2(failed + 1)
    double log2_failed_weak = 0.0;  // log2(failed + weak + 1)
    double budget = 0.0;
    bool success = false;  // failed < budget
};

struct ComparisonReport {
    std::vector<LevelEntry> levels;
    bool monotone_improvement = false;

    std::string to_json() const;
    /// CSV plot data: level, failed, failed+weak, log2-transformed series,
    /// and the success-region boundary.
    std::string to_plot_csv() const;
};

/// Per-level aggregation with the log2(f + 1) plot transform and the
/// success-boundary flag per level.
ComparisonReport compare_levels(const std::map<int, BatteryReport>& reports);

/// Fixed-width table of a battery report; per-suite cells show
/// "failed (weak)".
std::string render_table(const BatteryReport& report);

}  // namespace rngwb

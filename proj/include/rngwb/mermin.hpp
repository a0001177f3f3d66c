#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rngwb/bitstring.hpp"

namespace rngwb {

/// One protocol round: measurement settings (x, y) — the third station's
/// setting is implicitly x XOR y — and outcome bits (a, b, c).
struct MerminRecord {
    std::uint8_t x, y, a, b, c;
};

struct MerminRecordSet {
    std::vector<MerminRecord> rounds;

    std::size_t size() const noexcept { return rounds.size(); }
    bool empty() const noexcept { return rounds.empty(); }
};

/// Correlators for the four settings, indexed by (x << 1) | y:
/// E[0] = E_{0,0,0}, E[1] = E_{0,1,1}, E[2] = E_{1,0,1}, E[3] = E_{1,1,0}.
using Correlators = std::array<double, 4>;

/// Empirical correlators E = P(a^b^c = 0 | setting) - P(a^b^c = 1 | setting).
/// Every setting must appear at least once.
Correlators correlators(const MerminRecordSet& records);

/// M = E_{0,0,0} - E_{0,1,1} - E_{1,0,1} - E_{1,1,0}; algebraic range [-4, 4].
double mermin_value(const Correlators& e);

/// Concentration-bound form used to trade the failure probability for the
/// slack t. Standard is exp(-2 n t^2); AsPrinted is the exp(-2 t / n) variant
/// kept for comparison runs only.
enum class HoeffdingForm { Standard, AsPrinted };

struct MerminAdjustment {
    double t = 0.0;
    double m_adj = 0.0;
};

/// Finite-statistics reduction M_adj = M_obs - 16 t, with t solving
/// eps_est = exp(-2 n t^2) (or the printed variant).
MerminAdjustment adjust_mermin(double m_obs, std::size_t n, double eps_est,
                               HoeffdingForm form = HoeffdingForm::Standard);

/// Rate model mapping an adjusted Mermin value to the certified min-entropy
/// rate per retained bit. Contract: zero at or below the classical bound 2,
/// continuous and nondecreasing on (2, 4].
using RateFunction = std::function<double(double)>;

/// Default model: piecewise-linear interpolation through the published
/// calibration point (3.75 -> 0.518), pinned to 0 at the classical bound and
/// 1 at the algebraic maximum. Swap in an exact analytic bound via the
/// RateFunction hook if one is available.
const RateFunction& default_rate_function();

/// alpha_Q for an adjusted Mermin value in [-4, 4].
double certified_rate(double m_adj, const RateFunction& model = default_rate_function());

/// Noisy parity simulator: each round picks (x, y) uniformly and emits a
/// uniform outcome triple whose parity matches the setting's target with
/// probability (1 + v) / 2, giving asymptotic correlators of magnitude v and
/// Mermin value 4v. Deterministic in rng_seed.
MerminRecordSet simulate_records(double visibility, std::size_t n, std::uint64_t rng_seed);

/// Concatenation a_1 b_1 a_2 b_2 ... of the two retained outcome bits,
/// ready for two-source extraction.
BitString retained_bits(const MerminRecordSet& records);

struct MerminAssessment {
    Correlators e{};
    double m_obs = 0.0;
    double t = 0.0;
    double m_adj = 0.0;
    double eps_est = 0.0;
    double alpha_q = 0.0;
    std::size_t rounds = 0;

    std::string to_json() const;
};

/// Full analysis: correlators, Mermin value, adjustment, certified rate.
MerminAssessment analyze_records(const MerminRecordSet& records, double eps_est,
                                 HoeffdingForm form = HoeffdingForm::Standard,
                                 const RateFunction& model = default_rate_function());

/// CSV record files: header line "x,y,a,b,c", one round per line.
void write_records_csv(const MerminRecordSet& records, const std::filesystem::path& path);
MerminRecordSet read_records_csv(const std::filesystem::path& path);

}  // namespace rngwb

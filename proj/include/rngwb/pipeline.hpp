#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rngwb/bitstring.hpp"
#include "rngwb/extractors.hpp"
#include "rngwb/mermin.hpp"

namespace rngwb {

/// Raised when a level's entropy requirements cannot be met (as opposed to
/// bad arguments): the run is refused, with the arithmetic in the message.
class PipelineRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full account of one pipeline run: every extraction round, the epsilon
/// ledger, and where the seed bits came from. Rounds that only build the
/// internal seed are ledgered separately from rounds whose bits are emitted,
/// so the output recount is exact while every round still pays its epsilon.
struct PipelineManifest {
    int level = 0;
    std::vector<ExtractorJob> jobs;       // rounds whose output is emitted
    std::vector<ExtractorJob> seed_jobs;  // rounds that built the seed
    EpsilonBudget budget;
    std::size_t produced_bits = 0;
    std::size_t input_bits_consumed = 0;
    std::size_t discarded_tail_bits = 0;
    std::string seed_provenance;
    std::vector<std::string> notes;

    /// Sum of m_out over emitting jobs; must equal produced_bits.
    std::size_t recount_bits() const;
    std::string to_json() const;
};

struct PipelineResult {
    BitString output;
    PipelineManifest manifest;
};

inline constexpr std::size_t kSeededBlockBits = 10006;  // seed length 10007, prime
inline constexpr double kDefaultEpsRound = 5.421010862427522e-20;   // 2^-64
inline constexpr double kDefaultEpsEst = 1.8189894035458565e-12;    // 2^-39
inline constexpr double kDefaultTwoSourceMargin = 0.02;

/// Level 1: Von Neumann debiasing. No entropy estimate is consumed and the
/// recorded extraction error is zero; both are conditional on the fixed
/// per-pair bias assumption. An all-concordant input yields an empty output
/// and a note, not an error.
PipelineResult run_level1(const BitString& input);

/// Level 2: strong seeded extraction. The input splits into fixed blocks,
/// one seed drives every round, outputs concatenate until requested_bits is
/// reached or input runs out. seed_bits must hold at least block + 1 bits;
/// extra seed material is ignored. requested_bits = 0 means "consume all".
PipelineResult run_level2(const BitString& input, const BitString& seed_bits, double alpha_rng,
                          double eps_round, std::size_t requested_bits,
                          const std::string& seed_provenance,
                          std::size_t block_bits = kSeededBlockBits,
                          double eps_est = kDefaultEpsEst);

/// Level 3: two-source bootstrap. Step 1 extracts from input blocks against
/// the weak second source Y (min-entropy rate 1 + margin - alpha_rng),
/// chaining rounds until a full seed exists; step 2 proceeds as level 2 with
/// that seed.
PipelineResult run_level3(const BitString& input, const BitString& second_source,
                          double alpha_rng, double margin, double eps_round,
                          std::size_t requested_bits, const std::string& second_provenance,
                          std::size_t block_bits = kSeededBlockBits,
                          double eps_est = kDefaultEpsEst);

/// Level 4: physical second source. The retained outcome bits of a Mermin
/// record set act as Y with the certified rate alpha_q; refused outright
/// when alpha_rng <= 1 - alpha_q. eps_est_mermin is the estimation error
/// spent on the certification.
PipelineResult run_level4(const BitString& input, const MerminRecordSet& records,
                          double alpha_rng, double eps_est_mermin, double eps_round,
                          std::size_t requested_bits,
                          const RateFunction& model = default_rate_function(),
                          std::size_t block_bits = kSeededBlockBits);

}  // namespace rngwb

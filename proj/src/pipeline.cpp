#include "rngwb/pipeline.hpp"

#include <cmath>

#include <json.hpp>

#include "rngwb/special.hpp"

namespace rngwb {

std::size_t PipelineManifest::recount_bits() const {
    std::size_t total = 0;
    for (const ExtractorJob& j : jobs) total += j.m_out;
    return total;
}

namespace {

nlohmann::json job_to_json(const ExtractorJob& job) {
    nlohmann::json e;
    e["kind"] = std::string(extractor_kind_name(job.kind));
    e["n_input"] = job.n_input;
    e["n_seed"] = job.n_seed;
    e["k1_bits"] = job.k1_bits;
    e["k2_bits"] = job.k2_bits;
    e["eps_round"] = job.eps_round;
    e["m_out"] = job.m_out;
    return e;
}

}  // namespace

std::string PipelineManifest::to_json() const {
    nlohmann::json j;
    j["level"] = level;
    j["jobs"] = nlohmann::json::array();
    for (const ExtractorJob& job : jobs) j["jobs"].push_back(job_to_json(job));
    j["seed_jobs"] = nlohmann::json::array();
    for (const ExtractorJob& job : seed_jobs) j["seed_jobs"].push_back(job_to_json(job));
    j["epsilon"]["eps_est"] = budget.eps_est;
    j["epsilon"]["rounds"] = budget.rounds;
    j["epsilon"]["eps_round"] = budget.eps_round;
    j["epsilon"]["eps_total"] = budget.eps_total;
    j["epsilon"]["budget_satisfied"] = budget.satisfied;
    j["produced_bits"] = produced_bits;
    j["input_bits_consumed"] = input_bits_consumed;
    j["discarded_tail_bits"] = discarded_tail_bits;
    j["seed_provenance"] = seed_provenance;
    j["notes"] = notes;
    return j.dump(2);
}

PipelineResult run_level1(const BitString& input) {
    if (input.empty()) throw std::invalid_argument("level 1: empty input");
    PipelineResult r;
    r.output = von_neumann(input);
    r.manifest.level = 1;
    r.manifest.seed_provenance = "none";
    ExtractorJob job;
    job.kind = ExtractorKind::VonNeumann;
    job.n_input = input.size();
    job.m_out = r.output.size();
    r.manifest.jobs.push_back(job);
    // Deterministic extraction consumes no estimate and adds no extraction
    // error, conditional on the fixed per-pair bias assumption.
    r.manifest.budget = EpsilonBudget{0.0, 0, 0.0, 0.0, true};
    r.manifest.produced_bits = r.output.size();
    r.manifest.input_bits_consumed = input.size() - (input.size() % 2);
    r.manifest.discarded_tail_bits = input.size() % 2;
    r.manifest.notes.push_back("epsilon = 0 conditional on fixed per-pair bias");
    if (r.output.empty())
        r.manifest.notes.push_back("warning: no discordant pairs, output is empty");
    return r;
}

namespace {

struct SeededRun {
    BitString output;
    std::vector<ExtractorJob> jobs;
    std::size_t input_bits_consumed = 0;
};

// Strong seeded rounds over consecutive blocks starting at block_start_bit.
// Whole rounds are emitted; runs stop once requested_bits is covered or the
// input has no full block left. requested_bits = 0 means consume everything.
SeededRun seeded_rounds(const BitString& input, std::size_t block_start_bit,
                        const CirculantExtractor& extractor, double alpha_rng, double eps_round,
                        std::size_t requested_bits) {
    const std::size_t block = extractor.input_bits();
    const double k1 = alpha_rng * static_cast<double>(block);
    const std::size_t m =
        output_length(ExtractorKind::CirculantSeeded, block, k1, 0.0, eps_round);
    if (m == 0)
        throw PipelineRefusal("seeded round yields no output: k1 = " + std::to_string(k1) +
                              " bits is below the extraction cost");
    SeededRun run;
    std::size_t pos = block_start_bit;
    while (pos + block <= input.size()) {
        if (requested_bits != 0 && run.output.size() >= requested_bits) break;
        const BitString x = input.slice(pos, block);
        pos += block;
        run.output.append(extractor.extract(x, m));
        ExtractorJob job;
        job.kind = ExtractorKind::CirculantSeeded;
        job.n_input = block;
        job.n_seed = block + 1;
        job.k1_bits = k1;
        job.k2_bits = static_cast<double>(block + 1);
        job.eps_round = eps_round;
        job.m_out = m;
        run.jobs.push_back(job);
    }
    run.input_bits_consumed = pos - block_start_bit;
    return run;
}

void finish_manifest(PipelineManifest& manifest, const BitString& input, const BitString& output,
                     double eps_est, double eps_round) {
    manifest.budget =
        eps_budget(eps_est, manifest.jobs.size() + manifest.seed_jobs.size(), eps_round);
    manifest.produced_bits = output.size();
    manifest.discarded_tail_bits = input.size() - manifest.input_bits_consumed;
    if (manifest.discarded_tail_bits > 0)
        manifest.notes.push_back("tail of " + std::to_string(manifest.discarded_tail_bits) +
                                 " bits discarded (no zero-padding)");
    if (!manifest.budget.satisfied)
        throw PipelineRefusal("epsilon budget exceeded: eps_total = " +
                              std::to_string(manifest.budget.eps_total));
}

}  // namespace

PipelineResult run_level2(const BitString& input, const BitString& seed_bits, double alpha_rng,
                          double eps_round, std::size_t requested_bits,
                          const std::string& seed_provenance, std::size_t block_bits,
                          double eps_est) {
    if (!(alpha_rng > 0.0 && alpha_rng <= 1.0))
        throw std::invalid_argument("alpha_rng must lie in (0, 1]");
    if (input.size() < block_bits)
        throw std::invalid_argument("level 2: input shorter than one block (" +
                                    std::to_string(block_bits) + " bits)");
    if (seed_bits.size() < block_bits + 1)
        throw std::invalid_argument("level 2: seed must supply " + std::to_string(block_bits + 1) +
                                    " bits");

    const BitString seed = seed_bits.size() == block_bits + 1
                               ? seed_bits
                               : seed_bits.slice(0, block_bits + 1);
    CirculantExtractor extractor(seed);

    PipelineResult r;
    r.manifest.level = 2;
    r.manifest.seed_provenance = seed_provenance + " (" + std::to_string(seed.size()) + " bits)";
    SeededRun run = seeded_rounds(input, 0, extractor, alpha_rng, eps_round, requested_bits);
    r.output = std::move(run.output);
    r.manifest.jobs = std::move(run.jobs);
    r.manifest.input_bits_consumed = run.input_bits_consumed;
    finish_manifest(r.manifest, input, r.output, eps_est, eps_round);
    return r;
}

PipelineResult run_level3(const BitString& input, const BitString& second_source,
                          double alpha_rng, double margin, double eps_round,
                          std::size_t requested_bits, const std::string& second_provenance,
                          std::size_t block_bits, double eps_est) {
    if (!(alpha_rng > 0.0 && alpha_rng <= 1.0))
        throw std::invalid_argument("alpha_rng must lie in (0, 1]");
    const std::size_t seed_len = block_bits + 1;
    if (second_source.size() < seed_len)
        throw std::invalid_argument("level 3: second source must supply " +
                                    std::to_string(seed_len) + " bits");
    const double alpha_second = (1.0 + margin) - alpha_rng;
    if (!(alpha_second > 0.0 && alpha_second < 1.0))
        throw PipelineRefusal("level 3: required second-source rate " +
                              std::to_string(alpha_second) + " is outside (0, 1)");

    const BitString y = second_source.size() == seed_len ? second_source
                                                         : second_source.slice(0, seed_len);
    CirculantExtractor two_source(y);

    const double k1 = alpha_rng * static_cast<double>(block_bits);
    const double k2 = alpha_second * static_cast<double>(seed_len);
    const std::size_t m1 =
        output_length(ExtractorKind::CirculantTwoSource, block_bits, k1, k2, eps_round);
    if (m1 == 0)
        throw PipelineRefusal("level 3: two-source extraction yields no output at rates " +
                              std::to_string(alpha_rng) + " + " + std::to_string(alpha_second));

    PipelineResult r;
    r.manifest.level = 3;
    r.manifest.seed_provenance =
        "two-source bootstrap from " + second_provenance + " (rate " +
        std::to_string(alpha_second) + ", margin " + std::to_string(margin) + ")";

    // Step 1: chain two-source rounds over leading input blocks until a full
    // seed for step 2 exists. Y is strong, so reusing it across rounds is
    // sound.
    BitString seed_material;
    std::size_t pos = 0;
    while (seed_material.size() < seed_len) {
        if (pos + block_bits > input.size())
            throw std::invalid_argument("level 3: input exhausted while building the seed");
        const BitString x = input.slice(pos, block_bits);
        pos += block_bits;
        seed_material.append(two_source.extract(x, m1));
        ExtractorJob job;
        job.kind = ExtractorKind::CirculantTwoSource;
        job.n_input = block_bits;
        job.n_seed = seed_len;
        job.k1_bits = k1;
        job.k2_bits = k2;
        job.eps_round = eps_round;
        job.m_out = m1;
        r.manifest.seed_jobs.push_back(job);
    }
    r.manifest.notes.push_back(std::to_string(r.manifest.seed_jobs.size()) +
                               " two-source round(s) built the seed");

    const BitString seed = seed_material.slice(0, seed_len);
    CirculantExtractor seeded(seed);
    SeededRun run = seeded_rounds(input, pos, seeded, alpha_rng, eps_round, requested_bits);
    r.output = std::move(run.output);
    r.manifest.jobs = std::move(run.jobs);
    r.manifest.input_bits_consumed = pos + run.input_bits_consumed;
    finish_manifest(r.manifest, input, r.output, eps_est, eps_round);
    return r;
}

PipelineResult run_level4(const BitString& input, const MerminRecordSet& records,
                          double alpha_rng, double eps_est_mermin, double eps_round,
                          std::size_t requested_bits, const RateFunction& model,
                          std::size_t block_bits) {
    if (!(alpha_rng > 0.0 && alpha_rng <= 1.0))
        throw std::invalid_argument("alpha_rng must lie in (0, 1]");

    const MerminAssessment assessment =
        analyze_records(records, eps_est_mermin, HoeffdingForm::Standard, model);
    const double alpha_q = assessment.alpha_q;
    if (alpha_rng <= 1.0 - alpha_q)
        throw PipelineRefusal(
            "level 4: alpha_rng = " + std::to_string(alpha_rng) +
            " does not exceed 1 - alpha_Q = " + std::to_string(1.0 - alpha_q) +
            "; physical extraction is impossible at these rates");

    // Y is the retained outcome stream, truncated to the largest prime
    // length it covers; the matching input block is one bit shorter.
    const BitString retained = retained_bits(records);
    if (retained.size() < 3) throw std::invalid_argument("level 4: record set too small");
    const std::size_t p_y = prev_prime_u64(retained.size());
    const std::size_t x_block = p_y - 1;
    if (input.size() < x_block)
        throw std::invalid_argument("level 4: input shorter than the two-source block (" +
                                    std::to_string(x_block) + " bits)");

    const BitString y = retained.slice(0, p_y);
    const double k1 = alpha_rng * static_cast<double>(x_block);
    const double k2 = alpha_q * static_cast<double>(p_y);
    const std::size_t m1 =
        output_length(ExtractorKind::CirculantTwoSource, x_block, k1, k2, eps_round);
    if (m1 == 0)
        throw PipelineRefusal("level 4: two-source extraction yields no output bits");

    PipelineResult r;
    r.manifest.level = 4;
    r.manifest.seed_provenance = "mermin-records (" + std::to_string(records.size()) +
                                 " rounds, M_adj = " + std::to_string(assessment.m_adj) +
                                 ", alpha_Q = " + std::to_string(alpha_q) + ")";

    const std::size_t seed_len = block_bits + 1;
    CirculantExtractor two_source(y);
    BitString seed_material;
    std::size_t pos = 0;
    while (seed_material.size() < seed_len) {
        if (pos + x_block > input.size())
            throw std::invalid_argument("level 4: input exhausted while building the seed");
        const BitString x = input.slice(pos, x_block);
        pos += x_block;
        seed_material.append(two_source.extract(x, m1));
        ExtractorJob job;
        job.kind = ExtractorKind::CirculantTwoSource;
        job.n_input = x_block;
        job.n_seed = p_y;
        job.k1_bits = k1;
        job.k2_bits = k2;
        job.eps_round = eps_round;
        job.m_out = m1;
        r.manifest.seed_jobs.push_back(job);
    }

    const BitString seed = seed_material.slice(0, seed_len);
    CirculantExtractor seeded(seed);
    SeededRun run = seeded_rounds(input, pos, seeded, alpha_rng, eps_round, requested_bits);
    r.output = std::move(run.output);
    r.manifest.jobs = std::move(run.jobs);
    r.manifest.input_bits_consumed = pos + run.input_bits_consumed;
    // Total error: the certification estimate plus every extraction round.
    finish_manifest(r.manifest, input, r.output, eps_est_mermin, eps_round);
    return r;
}

}  // namespace rngwb

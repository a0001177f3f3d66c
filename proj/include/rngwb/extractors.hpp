#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rngwb/bitstring.hpp"

namespace rngwb {

enum class ExtractorKind { VonNeumann, CirculantSeeded, CirculantTwoSource };

std::string_view extractor_kind_name(ExtractorKind k);

/// Parameters of one extraction round, as recorded in pipeline manifests.
struct ExtractorJob {
    ExtractorKind kind = ExtractorKind::VonNeumann;
    std::size_t n_input = 0;
    std::size_t n_seed = 0;   // 0 for Von Neumann
    double k1_bits = 0.0;     // min-entropy claimed for the input
    double k2_bits = 0.0;     // min-entropy claimed for the seed / second source
    double eps_round = 0.0;   // 0 for Von Neumann
    std::size_t m_out = 0;
};

/// Failure-probability ledger: estimation error plus one term per
/// extraction round, checked against the 2^-32 target.
struct EpsilonBudget {
    double eps_est = 0.0;
    std::size_t rounds = 0;
    double eps_round = 0.0;
    double eps_total = 0.0;
    bool satisfied = false;
};

inline constexpr double kEpsilonTarget = 2.3283064365386963e-10;  // 2^-32

EpsilonBudget eps_budget(double eps_est, std::size_t rounds, double eps_round);

/// Pairwise debiaser: walks input pairs (x0, x1) and emits x0 whenever the
/// pair differs. A trailing odd bit is discarded. Empty output is valid.
BitString von_neumann(const BitString& s);

/// Circulant extraction core. x has n bits, y has n + 1 bits with n + 1
/// prime. x is zero-extended by one bit and cyclically convolved with y over
/// GF(2); the first m bits of the convolution are returned. This definition
/// is normative — the transform-accelerated implementation used here is
/// checked bit-for-bit against the plain circulant-matrix product in the
/// test suite.
BitString circulant_core(const BitString& x, const BitString& y, std::size_t m);

/// Repeated-round form: validates y once and caches its transform so one
/// seed can drive many extraction rounds cheaply.
class CirculantExtractor {
public:
    explicit CirculantExtractor(BitString y);

    std::size_t input_bits() const noexcept { return p_ - 1; }
    std::size_t seed_bits() const noexcept { return p_; }

    BitString extract(const BitString& x, std::size_t m) const;

private:
    std::size_t p_;              // seed length, prime
    std::size_t transform_size_;
    std::vector<std::uint64_t> y_transform_;
};

/// Extractable output length in bits:
///   m = max(0, floor(k1 + k2 - (n + 1) - 2*log2(1/eps)))
/// For the seeded kind the seed is taken as perfect, k2 = n + 1.
std::size_t output_length(ExtractorKind kind, std::size_t n, double k1, double k2, double eps);

}  // namespace rngwb

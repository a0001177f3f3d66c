#pragma once

#include <cstddef>
#include <vector>

#include "rngwb/bitstring.hpp"

namespace rngwb {

/// Finite probability distribution over an indexed alphabet.
struct Distribution {
    std::vector<double> probs;

    /// Throws unless all entries are nonnegative and sum to 1 within 1e-12.
    void validate() const;
};

/// Entropy assessment over repeated per-sample estimates: the sample mean,
/// Bessel-corrected standard deviation, and the seven-sigma lower bound on
/// the per-bit rate together with its failure probability.
struct EntropyAssessment {
    std::vector<double> per_sample_estimates;
    double mean_est = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;    // mean - 7*sigma, clipped to [0, 1]
    double eps_est = 0.0;  // probability any sample estimate falls below alpha
    bool clipped = false;  // alpha left [0, 1] before clipping

    std::string to_json() const;
    static EntropyAssessment from_json(const std::string& text);
};

/// Min-entropy of a distribution: -log2 of the largest probability.
double min_entropy(const Distribution& d);

/// Min-entropy rate k / n for an n-bit variable carrying k bits.
double min_entropy_rate(double k_bits, std::size_t n);

/// Most-common-value estimate, in min-entropy bits per input bit.
/// Symbols are consecutive symbol_bits-bit groups (MSB-first); the observed
/// top frequency is inflated to its 99% upper confidence bound before taking
/// the logarithm, so the estimate errs low.
double mcv_estimate(const BitString& s, std::size_t symbol_bits);

/// Bessel-corrected sample standard deviation; needs >= 2 values.
double sample_sigma(const std::vector<double>& estimates);

/// Seven-sigma lower-bound rule applied to a set of per-bit estimates.
EntropyAssessment lower_bound_alpha(const std::vector<double>& estimates);

/// Same rule from precomputed moments; z is the sigma multiplier.
/// At z = 7 the reported failure probability is 2^-39; other multipliers get
/// the exact normal tail.
EntropyAssessment alpha_from_moments(double mean, double sigma, double z = 7.0);

}  // namespace rngwb

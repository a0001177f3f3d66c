#include "rngwb/minentropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "rngwb/special.hpp"

namespace rngwb {

void Distribution::validate() const {
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0 || std::isnan(p)) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
}

double min_entropy(const Distribution& d) {
    d.validate();
    if (d.probs.empty()) throw std::invalid_argument("empty distribution");
    const double pmax = *std::max_element(d.probs.begin(), d.probs.end());
    return -std::log2(pmax);
}

double min_entropy_rate(double k_bits, std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (k_bits < 0.0 || k_bits > static_cast<double>(n))
        throw std::invalid_argument("min-entropy must lie in [0, n]");
    return k_bits / static_cast<double>(n);
}

double mcv_estimate(const BitString& s, std::size_t symbol_bits) {
    if (symbol_bits == 0 || symbol_bits > 24)
        throw std::invalid_argument("symbol_bits out of range");
    const std::size_t symbols = s.size() / symbol_bits;
    if (symbols < 1000) throw std::invalid_argument("sample too small for MCV estimate");

    std::vector<std::size_t> counts(std::size_t{1} << symbol_bits, 0);
    for (std::size_t i = 0; i < symbols; ++i) {
        std::size_t v = 0;
        for (std::size_t b = 0; b < symbol_bits; ++b)
            v = (v << 1) | static_cast<std::size_t>(s.bit(i * symbol_bits + b));
        ++counts[v];
    }
    const std::size_t top = *std::max_element(counts.begin(), counts.end());
    const double n = static_cast<double>(symbols);
    const double p_hat = static_cast<double>(top) / n;
    const double p_up = std::min(1.0, p_hat + 2.576 * std::sqrt(p_hat * (1.0 - p_hat) / n));
    return -std::log2(p_up) / static_cast<double>(symbol_bits);
}

double sample_sigma(const std::vector<double>& estimates) {
    if (estimates.size() < 2) throw std::invalid_argument("need at least 2 estimates");
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    double ss = 0.0;
    for (double e : estimates) ss += (mean - e) * (mean - e);
    return std::sqrt(ss / static_cast<double>(estimates.size() - 1));
}

EntropyAssessment lower_bound_alpha(const std::vector<double>& estimates) {
    for (double e : estimates)
        if (e < 0.0 || e > 1.0) throw std::invalid_argument("estimate outside [0, 1]");
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    EntropyAssessment a = alpha_from_moments(mean, sample_sigma(estimates));
    a.per_sample_estimates = estimates;
    return a;
}

EntropyAssessment alpha_from_moments(double mean, double sigma, double z) {
    if (sigma < 0.0 || z <= 0.0) throw std::invalid_argument("bad moments");
    EntropyAssessment a;
    a.mean_est = mean;
    a.sigma = sigma;
    a.alpha = mean - z * sigma;
    if (a.alpha < 0.0 || a.alpha > 1.0) {
        a.clipped = true;
        a.alpha = std::clamp(a.alpha, 0.0, 1.0);
    }
    // The seven-sigma rule is quoted at 2^-39; any other multiplier gets the
    // exact normal tail.
    a.eps_est = (z == 7.0) ? std::ldexp(1.0, -39) : normal_tail(z);
    return a;
}

std::string EntropyAssessment::to_json() const {
    nlohmann::json j;
    j["per_sample_estimates"] = per_sample_estimates;
    j["mean_est"] = mean_est;
    j["sigma"] = sigma;
    j["alpha"] = alpha;
    j["eps_est"] = eps_est;
    j["clipped"] = clipped;
    return j.dump(2);
}

EntropyAssessment EntropyAssessment::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    EntropyAssessment a;
    a.per_sample_estimates = j.value("per_sample_estimates", std::vector<double>{});
    a.mean_est = j.at("mean_est").get<double>();
    a.sigma = j.at("sigma").get<double>();
    a.alpha = j.at("alpha").get<double>();
    a.eps_est = j.at("eps_est").get<double>();
    a.clipped = j.value("clipped", false);
    return a;
}

}  // namespace rngwb

#include <doctest.h>

#include <cmath>

#include "rngwb/minentropy.hpp"
#include "rngwb/sources.hpp"

using namespace rngwb;

namespace {

// Per-bit estimates behind the published per-RNG summary rows (ten samples
// per device).
const std::vector<double> kLfsrColumn = {
    0.869624625, 0.724038,    0.895226375, 0.829800625, 0.91921975,
    0.890136375, 0.901685375, 0.898611125, 0.829797875, 0.829797875};

}  // namespace

TEST_CASE("min-entropy of simple distributions") {
    Distribution uniform256;
    uniform256.probs.assign(256, 1.0 / 256.0);
    CHECK(min_entropy(uniform256) == doctest::Approx(8.0));

    Distribution point;
    point.probs = {1.0, 0.0, 0.0};
    CHECK(min_entropy(point) == doctest::Approx(0.0));

    Distribution quarter;
    quarter.probs = {0.25, 0.25, 0.25, 0.25};
    CHECK(min_entropy(quarter) == doctest::Approx(2.0));
    // any shape with max prob 1/4 gives the same value
    Distribution skewed;
    skewed.probs = {0.25, 0.25, 0.2, 0.15, 0.15};
    CHECK(min_entropy(skewed) == doctest::Approx(2.0));

    Distribution bad;
    bad.probs = {0.5, 0.6};
    CHECK_THROWS_AS((void)min_entropy(bad), std::invalid_argument);
}

TEST_CASE("min-entropy never exceeds log2 of the alphabet, equality iff uniform") {
    for (std::size_t size : {2ul, 8ul, 100ul}) {
        Distribution d;
        d.probs.assign(size, 1.0 / static_cast<double>(size));
        CHECK(min_entropy(d) == doctest::Approx(std::log2(static_cast<double>(size))));
        d.probs[0] += 0.01;
        d.probs[1] -= 0.01;
        CHECK(min_entropy(d) < std::log2(static_cast<double>(size)));
    }
}

TEST_CASE("min-entropy rate") {
    CHECK(min_entropy_rate(8.0, 8) == doctest::Approx(1.0));
    CHECK(min_entropy_rate(0.0, 17) == doctest::Approx(0.0));
    CHECK(min_entropy_rate(6984.0, 10006) == doctest::Approx(0.69798).epsilon(1e-4));
    CHECK_THROWS_AS((void)min_entropy_rate(9.0, 8), std::invalid_argument);
    CHECK_THROWS_AS((void)min_entropy_rate(1.0, 0), std::invalid_argument);
}

TEST_CASE("most-common-value estimate") {
    // Constant stream: the upper confidence bound saturates at 1.
    BitString constant;
    for (int i = 0; i < 8000; ++i) constant.push_back(1);
    CHECK(mcv_estimate(constant, 8) == doctest::Approx(0.0));

    // Uniform bytes: close to one full bit per bit.
    const BitString uniform = uniform_fixture(1000000, 400);
    const double est = mcv_estimate(uniform, 8);
    CHECK(est >= 0.95);
    CHECK(est <= 1.0);

    // Biased bits, closed form: p_hat ~ 0.75 plus the confidence term.
    const BitString biased = biased_iid_generate(0.75, 1000000, 41);
    CHECK(mcv_estimate(biased, 1) == doctest::Approx(0.41).epsilon(0.02));

    CHECK_THROWS_AS((void)mcv_estimate(uniform_fixture(100, 1), 1), std::invalid_argument);
}

TEST_CASE("mcv estimate never exceeds 1 and shrinks as the top symbol grows") {
    // Constructed frequency profiles: same length, increasing dominance.
    double last = 1.1;
    for (double p0 : {0.5, 0.6, 0.75, 0.9}) {
        BitString s;
        const std::size_t n = 20000;
        const std::size_t zeros = static_cast<std::size_t>(p0 * n);
        for (std::size_t i = 0; i < n; ++i) s.push_back(i < zeros ? 0 : 1);
        const double est = mcv_estimate(s, 1);
        CHECK(est <= 1.0);
        CHECK(est <= last);
        last = est;
    }
}

TEST_CASE("sample sigma") {
    CHECK(sample_sigma({0.7, 0.7, 0.7}) == doctest::Approx(0.0));
    CHECK(sample_sigma({0.0, 1.0}) == doctest::Approx(0.7071067811865476));
    CHECK(sample_sigma(kLfsrColumn) == doctest::Approx(0.058).epsilon(0.02));  // 0.058 +- 0.001
    CHECK_THROWS_AS((void)sample_sigma({0.5}), std::invalid_argument);
}

TEST_CASE("seven-sigma lower bound reproduces the published rows") {
    const EntropyAssessment lfsr = alpha_from_moments(0.859, 0.058);
    CHECK(lfsr.alpha == doctest::Approx(0.453).epsilon(1e-9));
    const EntropyAssessment rdseed = alpha_from_moments(0.852, 0.022);
    CHECK(rdseed.alpha == doctest::Approx(0.698).epsilon(1e-9));
    const EntropyAssessment quantis = alpha_from_moments(0.895, 0.006);
    CHECK(quantis.alpha == doctest::Approx(0.853).epsilon(1e-9));

    // eps_est at the 7-sigma rule is reported as 2^-39.
    CHECK(lfsr.eps_est == doctest::Approx(std::ldexp(1.0, -39)));
    // A generic multiplier recomputes the exact tail.
    const EntropyAssessment z3 = alpha_from_moments(0.9, 0.01, 3.0);
    CHECK(z3.eps_est == doctest::Approx(0.0013498980316300933).epsilon(1e-9));
}

TEST_CASE("lower_bound_alpha from raw estimate lists") {
    const EntropyAssessment a = lower_bound_alpha(kLfsrColumn);
    CHECK(a.mean_est == doctest::Approx(0.8587938));
    CHECK(a.alpha == doctest::Approx(0.4534).epsilon(1e-3));
    CHECK_FALSE(a.clipped);

    CHECK_THROWS_AS((void)lower_bound_alpha({0.5, 1.3}), std::invalid_argument);

    // Wild samples clip to zero with the event reported.
    const EntropyAssessment wild = lower_bound_alpha({0.1, 0.9, 0.1, 0.9});
    CHECK(wild.clipped);
    CHECK(wild.alpha == 0.0);
}

TEST_CASE("translation consistency of the lower bound") {
    const std::vector<double> base = {0.4, 0.45, 0.5, 0.42, 0.47};
    const double c = 0.2;
    std::vector<double> shifted = base;
    for (double& v : shifted) v += c;
    const EntropyAssessment a = lower_bound_alpha(base);
    const EntropyAssessment b = lower_bound_alpha(shifted);
    CHECK(b.alpha - a.alpha == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("assessment JSON round-trip") {
    const EntropyAssessment a = lower_bound_alpha(kLfsrColumn);
    const EntropyAssessment b = EntropyAssessment::from_json(a.to_json());
    CHECK(b.alpha == doctest::Approx(a.alpha));
    CHECK(b.sigma == doctest::Approx(a.sigma));
    CHECK(b.per_sample_estimates == a.per_sample_estimates);
}

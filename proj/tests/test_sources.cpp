#include <doctest.h>

#include <array>
#include <unordered_set>

#include "rngwb/sources.hpp"

using namespace rngwb;

namespace {

// Test-local re-simulation of the shift register, written as literally as
// possible against the step description: registers in an array, feedback
// from taps {32, 22, 2, 1} complemented, output b1, downward shift, feedback
// into b32.
std::string oracle_lfsr32(std::uint32_t seed, std::size_t n) {
    std::array<int, 33> b{};  // b[1..32]
    for (int i = 1; i <= 32; ++i) b[i] = (seed >> (i - 1)) & 1;
    std::string out;
    for (std::size_t step = 0; step < n; ++step) {
        const int f = b[32] ^ b[22] ^ b[2] ^ b[1] ^ 1;
        out.push_back(static_cast<char>('0' + b[1]));
        for (int i = 1; i <= 31; ++i) b[i] = b[i + 1];
        b[32] = f;
    }
    return out;
}

}  // namespace

TEST_CASE("first output bit is b1 before the update") {
    Lfsr gen = Lfsr::standard32(0xFFFFFFFFu);
    CHECK(gen.step() == 1);

    Lfsr even = Lfsr::standard32(0xFFFFFFFEu);  // b1 = 0
    CHECK(even.step() == 0);
}

TEST_CASE("all-zero seed leaves the lockup-free cycle immediately") {
    Lfsr gen = Lfsr::standard32(0);
    gen.step();  // f = 0^0^0^0^1 = 1
    CHECK(gen.state() != 0);
    CHECK(gen.state() == (1ull << 31));
}

TEST_CASE("64-bit golden vectors against the step-by-step oracle") {
    // The all-ones register reproduces itself (XNOR feedback of an even tap
    // count), so its stream is constant ones; the oracle agrees.
    CHECK(lfsr_generate(0xFFFFFFFFu, 64).to_string01() == oracle_lfsr32(0xFFFFFFFFu, 64));
    CHECK(lfsr_generate(0xFFFFFFFFu, 64).to_string01() == std::string(64, '1'));

    CHECK(lfsr_generate(0x00000001u, 64).to_string01() == oracle_lfsr32(0x00000001u, 64));
    CHECK(lfsr_generate(0xDEADBEEFu, 64).to_string01() == oracle_lfsr32(0xDEADBEEFu, 64));
    // Frozen vector from the oracle. Hand-checkable start: seed 0x1 emits
    // its one bit, then zeros while the register drains; the feedback bits
    // injected at b32 first reach the output at step 32.
    CHECK(lfsr_generate(0x00000001u, 64).to_string01() ==
          "1000000000000000000000000000000001010101010110011001100010001000");
}

TEST_CASE("identical seeds give identical streams") {
    CHECK(lfsr_generate(0x12345678u, 1000) == lfsr_generate(0x12345678u, 1000));
    CHECK(lfsr_generate(0x12345678u, 1000) != lfsr_generate(0x12345679u, 1000));
}

TEST_CASE("state does not repeat over 1e6 steps") {
    // The complemented feedback makes all-ones the unique fixed point, so
    // the walk starts elsewhere.
    Lfsr gen = Lfsr::standard32(0x00000001u);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2 * 1000 * 1000);
    bool distinct = true;
    for (int i = 0; i < 1000000; ++i) {
        if (!seen.insert(gen.state()).second) {
            distinct = false;
            break;
        }
        gen.step();
    }
    CHECK(distinct);
}

TEST_CASE("8-bit analog attains full period 255 by exhaustive iteration") {
    Lfsr gen = Lfsr::analog8(0x00);
    const std::uint64_t start = gen.state();
    std::unordered_set<std::uint64_t> seen;
    std::size_t steps = 0;
    do {
        CHECK(seen.insert(gen.state()).second);
        gen.step();
        ++steps;
    } while (gen.state() != start && steps <= 256);
    CHECK(steps == 255);
    CHECK(seen.size() == 255);
    // The one state off the cycle is the all-ones lockup state.
    CHECK(seen.count(0xFF) == 0);
}

TEST_CASE("lfsr argument validation") {
    CHECK_THROWS_AS((void)lfsr_generate(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Lfsr(8, {9}, 0), std::invalid_argument);
    CHECK_THROWS_AS(Lfsr(0, {1}, 0), std::invalid_argument);
}

TEST_CASE("biased source hits its bias and is deterministic") {
    CHECK_THROWS_AS((void)biased_iid_generate(0.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)biased_iid_generate(1.0, 10, 1), std::invalid_argument);

    CHECK(biased_iid_generate(0.3, 5000, 77) == biased_iid_generate(0.3, 5000, 77));

    const std::size_t n = 1000000;
    const BitString balanced = biased_iid_generate(0.5, n, 2024);
    const double zero_fraction = static_cast<double>(balanced.count_zeros()) / n;
    CHECK(zero_fraction == doctest::Approx(0.5).epsilon(0.004));  // 3 sigma ~ 0.0015

    // Heavily biased: zeros within 4 sigma of n * p0.
    const std::size_t m = 100000;
    const BitString skewed = biased_iid_generate(0.999, m, 555);
    const double sigma = std::sqrt(m * 0.999 * 0.001);
    CHECK(std::fabs(static_cast<double>(skewed.count_zeros()) - 99900.0) <= 4 * sigma);
}

TEST_CASE("empirical zero-fraction converges at 4 sigma for n >= 1e5") {
    for (double p0 : {0.25, 0.6, 0.75}) {
        const std::size_t n = 100000;
        const BitString s = biased_iid_generate(p0, n, 918273645);
        const double sigma = std::sqrt(p0 * (1 - p0) / n);
        const double observed = static_cast<double>(s.count_zeros()) / n;
        CHECK(std::fabs(observed - p0) <= 4 * sigma);
    }
}

TEST_CASE("uniform fixture generator is deterministic and roughly balanced") {
    const BitString a = uniform_fixture(100000, 5);
    CHECK(a == uniform_fixture(100000, 5));
    CHECK(a != uniform_fixture(100000, 6));
    const double frac = static_cast<double>(a.count_ones()) / 100000.0;
    CHECK(std::fabs(frac - 0.5) < 0.01);
}

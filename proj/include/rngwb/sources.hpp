#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rngwb/bitstring.hpp"

namespace rngwb {

/// Fibonacci shift register with XNOR-style feedback: one output bit per
/// step, feedback entering at the top register. Register width and tap
/// positions are template-free runtime parameters so the same machinery
/// drives both the 32-bit generator and small analogs.
///
/// Step semantics, for registers b1..bw:
///   f = b_{t1} ^ b_{t2} ^ ... ^ 1   (taps, then complement)
///   output b1
///   b_i <- b_{i+1} for i = 1..w-1   (every register moves exactly once)
///   b_w <- f
///
/// The complemented feedback means the all-ones state is the unique fixed
/// point (the classic XNOR lockup state); any other seed sits on the single
/// full-length cycle when the tap polynomial is primitive.
class Lfsr {
public:
    Lfsr(unsigned width, std::vector<unsigned> taps, std::uint64_t seed_state);

    /// 32-bit generator with taps {32, 22, 2, 1}.
    static Lfsr standard32(std::uint32_t seed_state) {
        return Lfsr(32, {32, 22, 2, 1}, seed_state);
    }
    /// 8-bit analog with taps {8, 3, 2, 1}, maximal-period under this step
    /// rule (cycle of 255 states plus the all-ones lockup state).
    static Lfsr analog8(std::uint8_t seed_state) { return Lfsr(8, {8, 3, 2, 1}, seed_state); }

    int step();  // emits b1, then updates the state
    BitString generate(std::size_t n);

    std::uint64_t state() const noexcept { return state_; }
    std::uint64_t step_count() const noexcept { return steps_; }
    unsigned width() const noexcept { return width_; }

private:
    unsigned width_;
    std::vector<unsigned> taps_;  // 1-based register indices
    std::uint64_t state_;         // bit (i-1) holds register b_i
    std::uint64_t mask_;
    std::uint64_t steps_ = 0;
};

/// Convenience wrapper: n bits from the 32-bit generator.
BitString lfsr_generate(std::uint32_t seed_state, std::size_t n);

/// n independent bits, each 0 with probability p0. Deterministic in rng_seed.
BitString biased_iid_generate(double p0, std::size_t n, std::uint64_t rng_seed);

/// Uniform bits from the deterministic fixture generator (splitmix64).
BitString uniform_fixture(std::size_t n, std::uint64_t rng_seed);

}  // namespace rngwb

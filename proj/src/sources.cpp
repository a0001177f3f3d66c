#include "rngwb/sources.hpp"

#include <stdexcept>

#include "rngwb/prng.hpp"

namespace rngwb {

Lfsr::Lfsr(unsigned width, std::vector<unsigned> taps, std::uint64_t seed_state)
    : width_(width), taps_(std::move(taps)) {
    if (width_ == 0 || width_ > 63) throw std::invalid_argument("lfsr width out of range");
    for (unsigned t : taps_)
        if (t == 0 || t > width_) throw std::invalid_argument("lfsr tap out of range");
    mask_ = (width_ == 64) ? ~0ull : ((1ull << width_) - 1);
    state_ = seed_state & mask_;
}

int Lfsr::step() {
    int f = 1;  // complemented feedback
    for (unsigned t : taps_) f ^= static_cast<int>((state_ >> (t - 1)) & 1);
    const int out = static_cast<int>(state_ & 1);  // b1
    state_ >>= 1;
    state_ |= static_cast<std::uint64_t>(f) << (width_ - 1);
    ++steps_;
    return out;
}

BitString Lfsr::generate(std::size_t n) {
    if (n == 0) throw std::invalid_argument("lfsr: n must be >= 1");
    BitString s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(step());
    return s;
}

BitString lfsr_generate(std::uint32_t seed_state, std::size_t n) {
    return Lfsr::standard32(seed_state).generate(n);
}

BitString biased_iid_generate(double p0, std::size_t n, std::uint64_t rng_seed) {
    if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("p0 must lie in (0, 1)");
    SplitMix64 rng(rng_seed);
    BitString s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(rng.next_double() < p0 ? 0 : 1);
    return s;
}

BitString uniform_fixture(std::size_t n, std::uint64_t rng_seed) {
    SplitMix64 rng(rng_seed);
    std::vector<std::uint8_t> bytes((n + 7) / 8);
    std::size_t i = 0;
    while (i + 8 <= bytes.size()) {
        const std::uint64_t w = rng.next_u64();
        for (int k = 0; k < 8; ++k) bytes[i + k] = static_cast<std::uint8_t>(w >> (8 * k));
        i += 8;
    }
    if (i < bytes.size()) {
        const std::uint64_t w = rng.next_u64();
        for (int k = 0; i < bytes.size(); ++k, ++i) bytes[i] = static_cast<std::uint8_t>(w >> (8 * k));
    }
    return BitString::from_bytes(bytes, n);
}

}  // namespace rngwb

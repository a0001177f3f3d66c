#pragma once

#include <cstdint>
#include <vector>

namespace rngwb {

/// Number-theoretic transform over the prime field q = 2^64 - 2^32 + 1.
/// The field supports power-of-two transform sizes up to 2^32, and its word
/// size means 0/1 convolutions of any practical length accumulate exactly
/// (counts stay far below q, so no carries alias the parity).
namespace ntt {

inline constexpr std::uint64_t kModulus = 0xFFFFFFFF00000001ull;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp);

/// Transform plan for one power-of-two size; reusable across calls.
class Plan {
public:
    explicit Plan(std::size_t size);

    std::size_t size() const noexcept { return n_; }
    void forward(std::vector<std::uint64_t>& a) const;
    void inverse(std::vector<std::uint64_t>& a) const;

private:
    void transform(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& twiddle) const;

    std::size_t n_;
    std::vector<std::uint64_t> fwd_twiddle_;
    std::vector<std::uint64_t> inv_twiddle_;
    std::vector<std::uint32_t> bitrev_;
    std::uint64_t n_inverse_;
};

/// Shared plan cache keyed by size.
const Plan& plan_for(std::size_t size);

}  // namespace ntt

/// Cyclic convolution over GF(2) of two equal-length 0/1 vectors:
/// out[k] = XOR over j of a[j] & b[(k - j) mod p].
/// Computed as an integer convolution via the NTT, folded to length p and
/// reduced mod 2.
std::vector<std::uint8_t> gf2_cyclic_convolution(const std::vector<std::uint8_t>& a,
                                                 const std::vector<std::uint8_t>& b);

}  // namespace rngwb

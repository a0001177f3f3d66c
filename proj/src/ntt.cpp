#include "rngwb/ntt.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rngwb {
namespace ntt {

namespace {

constexpr std::uint64_t kGenerator = 7;  // primitive root of the field

// Reduction of a 128-bit product using 2^64 = 2^32 - 1 and 2^96 = -1 (mod q).
inline std::uint64_t reduce128(unsigned __int128 x) {
    const std::uint64_t x0 = static_cast<std::uint64_t>(x);
    const std::uint64_t x1 = static_cast<std::uint64_t>(x >> 64);
    const std::uint64_t x1_lo = x1 & 0xFFFFFFFFull;
    const std::uint64_t x1_hi = x1 >> 32;

    std::uint64_t r = x0;
    const std::uint64_t s = (x1_lo << 32) - x1_lo;  // x1_lo * (2^32 - 1)
    r += s;
    if (r < s) r += 0xFFFFFFFFull;  // carry: add 2^64 mod q
    if (r < x1_hi)
        r = r - x1_hi + kModulus;
    else
        r -= x1_hi;
    if (r >= kModulus) r -= kModulus;
    return r;
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return reduce128(static_cast<unsigned __int128>(a) * b);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    while (exp) {
        if (exp & 1) r = mulmod(r, base);
        base = mulmod(base, base);
        exp >>= 1;
    }
    return r;
}

Plan::Plan(std::size_t size) : n_(size) {
    if (size < 2 || !std::has_single_bit(size) || size > (1ull << 32))
        throw std::invalid_argument("ntt size must be a power of two in [2, 2^32]");

    const std::uint64_t root = powmod(kGenerator, (kModulus - 1) / size);
    const std::uint64_t root_inv = powmod(root, kModulus - 2);
    n_inverse_ = powmod(size, kModulus - 2);

    fwd_twiddle_.resize(size / 2);
    inv_twiddle_.resize(size / 2);
    fwd_twiddle_[0] = inv_twiddle_[0] = 1;
    for (std::size_t i = 1; i < size / 2; ++i) {
        fwd_twiddle_[i] = mulmod(fwd_twiddle_[i - 1], root);
        inv_twiddle_[i] = mulmod(inv_twiddle_[i - 1], root_inv);
    }

    bitrev_.resize(size);
    const int bits = std::countr_zero(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::uint32_t r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        bitrev_[i] = r;
    }
}

void Plan::transform(std::vector<std::uint64_t>& a,
                     const std::vector<std::uint64_t>& twiddle) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = n_ / len;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::uint64_t w = twiddle[k * stride];
                const std::uint64_t u = a[start + k];
                const std::uint64_t v = mulmod(a[start + k + half], w);
                std::uint64_t s = u + v;
                if (s < u || s >= kModulus) s -= kModulus;
                std::uint64_t d = u - v;
                if (u < v) d += kModulus;
                a[start + k] = s;
                a[start + k + half] = d;
            }
        }
    }
}

void Plan::forward(std::vector<std::uint64_t>& a) const {
    if (a.size() != n_) throw std::invalid_argument("ntt size mismatch");
    transform(a, fwd_twiddle_);
}

void Plan::inverse(std::vector<std::uint64_t>& a) const {
    if (a.size() != n_) throw std::invalid_argument("ntt size mismatch");
    transform(a, inv_twiddle_);
    for (auto& x : a) x = mulmod(x, n_inverse_);
}

const Plan& plan_for(std::size_t size) {
    static std::mutex mutex;
    static std::map<std::size_t, Plan> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(size);
    if (it == cache.end()) it = cache.emplace(size, Plan(size)).first;
    return it->second;
}

}  // namespace ntt

std::vector<std::uint8_t> gf2_cyclic_convolution(const std::vector<std::uint8_t>& a,
                                                 const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("convolution length mismatch");
    const std::size_t p = a.size();
    if (p == 0) throw std::invalid_argument("empty convolution");

    std::size_t n = 1;
    while (n < 2 * p - 1) n <<= 1;
    const ntt::Plan& plan = ntt::plan_for(n);

    std::vector<std::uint64_t> fa(n, 0), fb(n, 0);
    for (std::size_t i = 0; i < p; ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < p; ++i) fb[i] = b[i];
    plan.forward(fa);
    plan.forward(fb);
    for (std::size_t i = 0; i < n; ++i) fa[i] = ntt::mulmod(fa[i], fb[i]);
    plan.inverse(fa);

    // Fold the linear convolution back to cyclic length p. Every entry is an
    // exact count well below the modulus, so parity survives.
    std::vector<std::uint8_t> out(p);
    for (std::size_t k = 0; k < p; ++k) {
        std::uint64_t v = fa[k];
        if (k + p < 2 * p - 1) v += fa[k + p];
        out[k] = static_cast<std::uint8_t>(v & 1);
    }
    return out;
}

}  // namespace rngwb

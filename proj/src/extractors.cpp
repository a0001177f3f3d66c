#include "rngwb/extractors.hpp"

#include <cmath>
#include <stdexcept>

#include "rngwb/ntt.hpp"
#include "rngwb/special.hpp"

namespace rngwb {

std::string_view extractor_kind_name(ExtractorKind k) {
    switch (k) {
        case ExtractorKind::VonNeumann: return "von-neumann";
        case ExtractorKind::CirculantSeeded: return "circulant-seeded";
        case ExtractorKind::CirculantTwoSource: return "circulant-two-source";
    }
    return "?";
}

EpsilonBudget eps_budget(double eps_est, std::size_t rounds, double eps_round) {
    if (!(eps_est > 0.0 && eps_est < 1.0)) throw std::invalid_argument("eps_est out of (0,1)");
    if (rounds > 0 && !(eps_round > 0.0 && eps_round < 1.0))
        throw std::invalid_argument("eps_round out of (0,1)");
    EpsilonBudget b;
    b.eps_est = eps_est;
    b.rounds = rounds;
    b.eps_round = rounds > 0 ? eps_round : 0.0;
    b.eps_total = eps_est + static_cast<double>(rounds) * b.eps_round;
    b.satisfied = b.eps_total <= kEpsilonTarget;
    return b;
}

BitString von_neumann(const BitString& s) {
    BitString out;
    const std::size_t pairs = s.size() / 2;
    for (std::size_t i = 0; i < pairs; ++i) {
        const int a = s.bit(2 * i);
        if (a != s.bit(2 * i + 1)) out.push_back(a);
    }
    return out;
}

namespace {

std::vector<std::uint8_t> to_unpacked(const BitString& s, std::size_t len) {
    std::vector<std::uint8_t> v(len, 0);
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = static_cast<std::uint8_t>(s.bit(i));
    return v;
}

void validate_circulant_shapes(std::size_t n, std::size_t seed_len, std::size_t m) {
    if (seed_len != n + 1) throw std::invalid_argument("seed length must equal input length + 1");
    if (!is_prime_u64(seed_len)) throw std::invalid_argument("seed length must be prime");
    // m may run to the full convolution length n + 1; extraction callers cap
    // it at n via output_length.
    if (m < 1 || m > n + 1) throw std::invalid_argument("output length out of range");
}

}  // namespace

BitString circulant_core(const BitString& x, const BitString& y, std::size_t m) {
    validate_circulant_shapes(x.size(), y.size(), m);
    const std::size_t p = y.size();
    const auto xs = to_unpacked(x, p);  // x zero-extended to p bits
    const auto ys = to_unpacked(y, p);
    const auto conv = gf2_cyclic_convolution(xs, ys);
    BitString out;
    for (std::size_t k = 0; k < m; ++k) out.push_back(conv[k]);
    return out;
}

CirculantExtractor::CirculantExtractor(BitString y) : p_(y.size()) {
    if (p_ < 2 || !is_prime_u64(p_)) throw std::invalid_argument("seed length must be prime");
    transform_size_ = 1;
    while (transform_size_ < 2 * p_ - 1) transform_size_ <<= 1;
    y_transform_.assign(transform_size_, 0);
    for (std::size_t i = 0; i < p_; ++i) y_transform_[i] = static_cast<std::uint64_t>(y.bit(i));
    ntt::plan_for(transform_size_).forward(y_transform_);
}

BitString CirculantExtractor::extract(const BitString& x, std::size_t m) const {
    validate_circulant_shapes(x.size(), p_, m);
    const ntt::Plan& plan = ntt::plan_for(transform_size_);
    std::vector<std::uint64_t> fx(transform_size_, 0);
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = static_cast<std::uint64_t>(x.bit(i));
    plan.forward(fx);
    for (std::size_t i = 0; i < transform_size_; ++i) fx[i] = ntt::mulmod(fx[i], y_transform_[i]);
    plan.inverse(fx);

    BitString out;
    for (std::size_t k = 0; k < m; ++k) {
        std::uint64_t v = fx[k];
        if (k + p_ < 2 * p_ - 1) v += fx[k + p_];
        out.push_back(static_cast<int>(v & 1));
    }
    return out;
}

std::size_t output_length(ExtractorKind kind, std::size_t n, double k1, double k2, double eps) {
    if (kind == ExtractorKind::VonNeumann)
        throw std::invalid_argument("von neumann output length is data-dependent");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps out of (0,1)");
    if (k1 < 0.0 || k1 > static_cast<double>(n)) throw std::invalid_argument("k1 out of [0, n]");
    if (kind == ExtractorKind::CirculantSeeded) k2 = static_cast<double>(n + 1);
    if (k2 < 0.0 || k2 > static_cast<double>(n + 1))
        throw std::invalid_argument("k2 out of [0, n+1]");
    const double m = std::floor(k1 + k2 - static_cast<double>(n + 1) - 2.0 * std::log2(1.0 / eps));
    if (m < 0.0) return 0;
    return static_cast<std::size_t>(m);
}

}  // namespace rngwb

#include "rngwb/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rngwb {

namespace {

constexpr int kMaxIter = 1000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

double igam_series(double a, double x) {
    // P(a,x) by the power series around x = 0.
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double igamc_cf(double a, double x) {
    // Q(a,x) by the modified Lentz continued fraction.
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double igamc(double a, double x) {
    if (a <= 0.0 || x < 0.0 || std::isnan(a) || std::isnan(x))
        throw std::invalid_argument("igamc: require a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - igam_series(a, x);
    return igamc_cf(a, x);
}

double igam(double a, double x) {
    if (a <= 0.0 || x < 0.0 || std::isnan(a) || std::isnan(x))
        throw std::invalid_argument("igam: require a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return igam_series(a, x);
    return 1.0 - igamc_cf(a, x);
}

double normal_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

double chi_square_upper_p(double chi2, double dof) {
    if (chi2 < 0.0 || dof <= 0.0) throw std::invalid_argument("chi_square_upper_p: bad args");
    return igamc(dof / 2.0, chi2 / 2.0);
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses decide primality for every n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t prev_prime_u64(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("prev_prime_u64: n < 2");
    for (std::uint64_t k = n;; --k) {
        if (is_prime_u64(k)) return k;
        if (k == 2) break;
    }
    return 2;
}

}  // namespace rngwb

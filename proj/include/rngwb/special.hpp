#pragma once

#include <cstdint>

namespace rngwb {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double igamc(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double igam(double a, double x);

/// Upper tail of the standard normal: Pr(Z > z).
double normal_tail(double z);

/// Two-sided normal p-value: Pr(|Z| > |z|) = erfc(|z| / sqrt(2)).
double normal_two_sided_p(double z);

/// Upper-tail chi-square p-value with the given degrees of freedom.
double chi_square_upper_p(double chi2, double dof);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Largest prime <= n (n >= 2).
std::uint64_t prev_prime_u64(std::uint64_t n);

}  // namespace rngwb

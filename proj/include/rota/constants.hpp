#pragma once

#include <cstdint>
#include <vector>

#include "rota/interval.hpp"

namespace rota {

// Certified evaluation of the decomposition proof's constants.  Every value
// is an interval that provably contains the exact quantity; integer
// thresholds are chosen so the defining inequalities hold under conservative
// endpoint substitution (the unfavorable endpoint everywhere).
using CertifiedValue = Interval;

struct ConstantsReport {
    Rat c;
    CertifiedValue c_prime;
    std::vector<CertifiedValue> alpha; // alpha[k-1] = α_k
    CertifiedValue delta;
    std::uint64_t L = 0;
    std::uint64_t K = 0;
    std::uint64_t n0 = 0;
};

// ∏_{i=1..ell} (1 - c^i), with the geometric tail bound
// ∏_{i>ell} (1 - c^i) >= 1 - c^{ell+1}/(1-c) supplying the lower factor.
// ell = 0 gives [1 - c/(1-c), 1].
CertifiedValue c_prime_partial(const Rat& c, std::uint32_t ell);

// Doubles ell until the interval width is <= eps.
CertifiedValue c_prime(const Rat& c, const Rat& eps);

// α_k = 1 / (1 + (c'/2)(1-c^k)/c^k), exact rational endpoints from the given
// c' interval (no dyadic rounding: the α tail comparisons need full relative
// precision at large k).
CertifiedValue alpha(const CertifiedValue& c_prime_val, const Rat& c, std::uint32_t k);

// δ = (1/3) ∏_{k>=1} (1 - α_k), truncated with the tail bound
// ∏_{k>ell} (1 - α_k) >= 1 - (2/c'_lo) c^{ell+1}/(1-c).
CertifiedValue delta(const Rat& c, const Rat& eps);

// Smallest L with (1 - 3 δ_lo)^L <= δ_lo / 2 (conservative substitution).
std::uint64_t choose_L(const CertifiedValue& delta_val);

// Smallest K with L (2/c'_lo) c^K / (1-c) <= δ_lo / 2.
std::uint64_t choose_K(const Rat& c, const CertifiedValue& c_prime_val,
                       const CertifiedValue& delta_val, std::uint64_t L);

// Smallest n with c^{n/2} <= (1-c)/2 (evaluated as c^n <= ((1-c)/2)^2),
// raised to 2K so both preconditions hold.
std::uint64_t min_n(const Rat& c, std::uint64_t K);

// Full report; alpha_count entries of the α table.
ConstantsReport constants_report(const Rat& c, const Rat& eps,
                                 std::uint32_t alpha_count = 8);

// Parses "0.35", ".5", or "7/20" into an exact rational.
Rat parse_rational(const std::string& s);

} // namespace rota

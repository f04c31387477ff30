#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "rota/errors.hpp"

namespace rota {

// Two coefficient domains:
//   Prime        -- the field Z/pZ, p prime, p < 2^31
//   ExactInteger -- integer arithmetic used fraction-free, standing in for Q
enum class FieldMode : std::uint8_t { Prime, ExactInteger };

struct FieldSpec {
    FieldMode mode = FieldMode::Prime;
    std::uint64_t p = 2; // meaningful only in Prime mode

    bool operator==(const FieldSpec&) const = default;

    static FieldSpec prime(std::uint64_t p) { return {FieldMode::Prime, p}; }
    static FieldSpec exact_integer() { return {FieldMode::ExactInteger, 0}; }
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    if (n % 3 == 0)
        return n == 3;
    // Trial division is plenty at p < 2^31 (at most ~7700 candidates).
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0)
            return false;
    }
    return true;
}

// Validates a spec; every entry point taking a FieldSpec calls this first.
inline FieldSpec field_make(const FieldSpec& spec) {
    if (spec.mode == FieldMode::Prime) {
        if (spec.p >= (std::uint64_t(1) << 31))
            throw Error("prime modulus must be < 2^31, got " + std::to_string(spec.p));
        if (!is_prime_u64(spec.p))
            throw NonPrimeModulus(spec.p);
    }
    return spec;
}

inline std::string field_name(const FieldSpec& spec) {
    return spec.mode == FieldMode::Prime ? "gf:" + std::to_string(spec.p) : "zz";
}

// Arithmetic in Z/pZ on canonical representatives [0, p).
struct PrimeCtx {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return (a * b) % p; // a,b < 2^31 so the product fits in 64 bits
    }
    // Extended Euclid; p prime so every nonzero a has an inverse.
    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0)
            throw NotInvertible("0 has no inverse mod " + std::to_string(p));
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t q = r / newr;
            t = std::exchange(newt, t - q * newt);
            r = std::exchange(newr, r - q * newr);
        }
        if (t < 0)
            t += static_cast<std::int64_t>(p);
        return static_cast<std::uint64_t>(t);
    }
    // Canonical representative of any signed integer.
    std::uint64_t canon(std::int64_t x) const {
        std::int64_t m = x % static_cast<std::int64_t>(p);
        if (m < 0)
            m += static_cast<std::int64_t>(p);
        return static_cast<std::uint64_t>(m);
    }
};

// Field-level inverse exposed on the spec.  In exact-integer mode only the
// units +-1 are invertible.
inline std::int64_t scalar_inv(const FieldSpec& spec, std::int64_t a) {
    field_make(spec);
    if (spec.mode == FieldMode::Prime) {
        PrimeCtx ctx{spec.p};
        return static_cast<std::int64_t>(ctx.inv(ctx.canon(a)));
    }
    if (a == 1 || a == -1)
        return a;
    throw NotInvertible(std::to_string(a) + " is not a unit over the integers");
}

} // namespace rota

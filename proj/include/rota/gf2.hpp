#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "rota/errors.hpp"
#include "rota/field.hpp"

namespace rota {

// Vector over GF(2), one bit per coordinate, packed little-endian into
// 64-bit words.  Bits at positions >= n are kept zero (class invariant).
struct Gf2Vec {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> w;

    Gf2Vec() = default;
    explicit Gf2Vec(std::uint32_t n) : n(n), w((n + 63) / 64, 0) {}

    bool get(std::uint32_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint32_t i, bool b) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (b)
            w[i >> 6] |= m;
        else
            w[i >> 6] &= ~m;
    }
    void xor_with(const Gf2Vec& o) {
        for (std::size_t k = 0; k < w.size(); ++k)
            w[k] ^= o.w[k];
    }
    bool operator==(const Gf2Vec&) const = default;
};

// Row-operation policy over GF(2).  The echelon/rank/intersection code is
// written against this interface; the GF(p) and integer backends implement
// the same one.
struct Gf2Ops {
    using Vec = Gf2Vec;

    FieldSpec field() const { return FieldSpec::prime(2); }

    Vec zero(std::uint32_t n) const { return Gf2Vec(n); }
    std::uint32_t dim(const Vec& v) const { return v.n; }

    bool is_zero(const Vec& v) const {
        for (std::uint64_t x : v.w)
            if (x)
                return false;
        return true;
    }

    // Index of the first nonzero coordinate.
    std::optional<std::uint32_t> leading(const Vec& v) const {
        for (std::size_t k = 0; k < v.w.size(); ++k) {
            if (v.w[k])
                return static_cast<std::uint32_t>(k * 64 +
                                                  std::countr_zero(v.w[k]));
        }
        return std::nullopt;
    }

    bool coeff_nonzero(const Vec& v, std::uint32_t col) const { return v.get(col); }

    // Post: v[col] == 0.  Branchless on purpose: the coefficient bit is
    // close to a coin flip in the hot loops, so a test would mispredict half
    // the time.
    void eliminate(Vec& v, const Vec& row, std::uint32_t col) const {
        std::uint64_t mask = std::uint64_t(0) - ((v.w[col >> 6] >> (col & 63)) & 1);
        for (std::size_t k = 0; k < v.w.size(); ++k)
            v.w[k] ^= row.w[k] & mask;
    }

    // Scale so the pivot coordinate is 1; a no-op over GF(2).
    void normalize(Vec&, std::uint32_t) const {}

    bool equal(const Vec& a, const Vec& b) const { return a == b; }

    // Canonical integer view of a coordinate, for serialization and tests.
    std::int64_t coord(const Vec& v, std::uint32_t i) const { return v.get(i); }
    void set_coord(Vec& v, std::uint32_t i, std::int64_t x) const {
        std::int64_t m = x % 2;
        v.set(i, m != 0);
    }
    void copy_coord(const Vec& src, std::uint32_t i, Vec& dst, std::uint32_t j) const {
        dst.set(j, src.get(i));
    }
};

} // namespace rota

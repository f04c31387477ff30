#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rota/errors.hpp"
#include "rota/field.hpp"

namespace rota {

// Vector over Z/pZ, canonical representatives in [0, p).
struct ModVec {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> c;

    ModVec() = default;
    explicit ModVec(std::uint32_t n) : n(n), c(n, 0) {}

    bool operator==(const ModVec&) const = default;
};

struct ModOps {
    PrimeCtx ctx;

    explicit ModOps(std::uint64_t p) : ctx{field_make(FieldSpec::prime(p)).p} {}

    using Vec = ModVec;

    FieldSpec field() const { return FieldSpec::prime(ctx.p); }

    Vec zero(std::uint32_t n) const { return ModVec(n); }
    std::uint32_t dim(const Vec& v) const { return v.n; }

    bool is_zero(const Vec& v) const {
        for (std::uint64_t x : v.c)
            if (x)
                return false;
        return true;
    }

    std::optional<std::uint32_t> leading(const Vec& v) const {
        for (std::uint32_t i = 0; i < v.n; ++i)
            if (v.c[i])
                return i;
        return std::nullopt;
    }

    bool coeff_nonzero(const Vec& v, std::uint32_t col) const { return v.c[col] != 0; }

    // v -= (v[col] / row[col]) * row.  Post: v[col] == 0.
    void eliminate(Vec& v, const Vec& row, std::uint32_t col) const {
        if (v.c[col] == 0)
            return;
        std::uint64_t f = ctx.mul(v.c[col], ctx.inv(row.c[col]));
        for (std::uint32_t i = 0; i < v.n; ++i)
            v.c[i] = ctx.sub(v.c[i], ctx.mul(f, row.c[i]));
    }

    void normalize(Vec& v, std::uint32_t pivot) const {
        std::uint64_t f = ctx.inv(v.c[pivot]);
        if (f == 1)
            return;
        for (std::uint32_t i = 0; i < v.n; ++i)
            v.c[i] = ctx.mul(v.c[i], f);
    }

    bool equal(const Vec& a, const Vec& b) const { return a == b; }

    std::int64_t coord(const Vec& v, std::uint32_t i) const {
        return static_cast<std::int64_t>(v.c[i]);
    }
    void set_coord(Vec& v, std::uint32_t i, std::int64_t x) const { v.c[i] = ctx.canon(x); }
    void copy_coord(const Vec& src, std::uint32_t i, Vec& dst, std::uint32_t j) const {
        dst.c[j] = src.c[i];
    }
};

} // namespace rota

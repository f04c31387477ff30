#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rota/errors.hpp"
#include "rota/field.hpp"

namespace rota {

using BigInt = boost::multiprecision::cpp_int;

// Vector with exact integer coordinates.  Spans are over Q; keeping integer
// entries and eliminating fraction-free gives exact rank arithmetic with no
// rounding and no modular wraparound.
struct ZZVec {
    std::uint32_t n = 0;
    std::vector<BigInt> c;

    ZZVec() = default;
    explicit ZZVec(std::uint32_t n) : n(n), c(n, 0) {}

    bool operator==(const ZZVec&) const = default;
};

struct ZZOps {
    using Vec = ZZVec;

    FieldSpec field() const { return FieldSpec::exact_integer(); }

    Vec zero(std::uint32_t n) const { return ZZVec(n); }
    std::uint32_t dim(const Vec& v) const { return v.n; }

    bool is_zero(const Vec& v) const {
        for (const BigInt& x : v.c)
            if (x != 0)
                return false;
        return true;
    }

    std::optional<std::uint32_t> leading(const Vec& v) const {
        for (std::uint32_t i = 0; i < v.n; ++i)
            if (v.c[i] != 0)
                return i;
        return std::nullopt;
    }

    bool coeff_nonzero(const Vec& v, std::uint32_t col) const { return v.c[col] != 0; }

    // Cross-multiplied elimination: v <- row[col]*v - v[col]*row, followed by
    // a content strip so repeated insertions cannot blow up entry size.
    // Post: v[col] == 0; the Q-span of {previous rows, v} is unchanged.
    void eliminate(Vec& v, const Vec& row, std::uint32_t col) const {
        if (v.c[col] == 0)
            return;
        BigInt a = row.c[col], b = v.c[col];
        for (std::uint32_t i = 0; i < v.n; ++i)
            v.c[i] = a * v.c[i] - b * row.c[i];
        strip_content(v);
    }

    // Divide out the gcd of the entries and make the pivot coordinate
    // positive.  Over Q this is the analogue of scaling the pivot to 1.
    void normalize(Vec& v, std::uint32_t pivot) const {
        strip_content(v);
        if (v.c[pivot] < 0)
            for (BigInt& x : v.c)
                x = -x;
    }

    bool equal(const Vec& a, const Vec& b) const { return a == b; }

    std::int64_t coord(const Vec& v, std::uint32_t i) const {
        if (v.c[i] > std::numeric_limits<std::int64_t>::max() ||
            v.c[i] < std::numeric_limits<std::int64_t>::min())
            throw SerializationError("integer coordinate does not fit in 64 bits");
        return static_cast<std::int64_t>(v.c[i]);
    }
    void set_coord(Vec& v, std::uint32_t i, std::int64_t x) const { v.c[i] = x; }
    void copy_coord(const Vec& src, std::uint32_t i, Vec& dst, std::uint32_t j) const {
        dst.c[j] = src.c[i];
    }

  private:
    static void strip_content(Vec& v) {
        BigInt g = 0;
        for (const BigInt& x : v.c) {
            g = boost::multiprecision::gcd(g, x);
            if (g == 1)
                return;
        }
        if (g == 0 || g == 1)
            return;
        for (BigInt& x : v.c)
            x /= g;
    }
};

// One-shot fraction-free rank (Bareiss).  Destroys its copy of the matrix;
// division at each step is exact, so all intermediates stay integral.
inline std::uint32_t bareiss_rank(std::vector<std::vector<BigInt>> m) {
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    for (const auto& r : m)
        if (r.size() != cols)
            throw DimensionMismatch("ragged matrix");
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<std::uint32_t>(rank);
}

} // namespace rota

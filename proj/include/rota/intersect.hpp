#pragma once

#include <cstdint>
#include <vector>

#include "rota/echelon.hpp"

namespace rota {

namespace detail {

// Basis of U ∩ W from bases of U and W, via the doubled-ambient trick:
// insert [u|u] for u in U and [w|0] for w in W into an echelon form of width
// 2n.  Any echelon row whose leading coordinate lies in the right half is a
// combination a·U + b·W with a·U + b·W = 0 on the left, so its right half
// a·U = -b·W sits in U ∩ W; those rows have distinct pivots and there are
// exactly dim U + dim W - dim(U+W) of them, hence they form a basis.
template <class Ops>
std::vector<typename Ops::Vec> intersect_pair(const Ops& ops, std::uint32_t n,
                                              const std::vector<typename Ops::Vec>& ub,
                                              const std::vector<typename Ops::Vec>& wb) {
    using Vec = typename Ops::Vec;
    EchelonBasisT<Ops> e(ops, 2 * n);
    for (const Vec& u : ub) {
        Vec d = ops.zero(2 * n);
        for (std::uint32_t i = 0; i < n; ++i) {
            ops.copy_coord(u, i, d, i);
            ops.copy_coord(u, i, d, n + i);
        }
        e.extend_in_place(std::move(d));
    }
    for (const Vec& w : wb) {
        Vec d = ops.zero(2 * n);
        for (std::uint32_t i = 0; i < n; ++i)
            ops.copy_coord(w, i, d, i);
        e.extend_in_place(std::move(d));
    }
    std::vector<Vec> out;
    for (std::size_t k = 0; k < e.rows().size(); ++k) {
        if (e.pivots()[k] < n)
            continue;
        Vec v = ops.zero(n);
        for (std::uint32_t i = 0; i < n; ++i)
            ops.copy_coord(e.rows()[k], n + i, v, i);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

// Dimension of the intersection of a list of subspaces, each given by an
// echelon basis in the same ambient space.  The list must be nonempty (an
// empty intersection would be the whole space, but its ambient is unknown).
template <class Ops>
std::uint32_t intersection_dim(const Ops& ops,
                               const std::vector<EchelonBasisT<Ops>>& subspaces) {
    if (subspaces.empty())
        throw EmptyList("intersection of an empty list has no ambient");
    const std::uint32_t n = subspaces[0].ambient();
    for (const auto& s : subspaces)
        if (s.ambient() != n)
            throw DimensionMismatch("intersection: mixed ambient dimensions");
    std::vector<typename Ops::Vec> cur = subspaces[0].rows();
    for (std::size_t s = 1; s < subspaces.size() && !cur.empty(); ++s)
        cur = detail::intersect_pair(ops, n, cur, subspaces[s].rows());
    return static_cast<std::uint32_t>(cur.size());
}

// Convenience overload: subspaces given by generating sets.
template <class Ops>
std::uint32_t
intersection_dim_of(const Ops& ops, std::uint32_t ambient,
                    const std::vector<std::vector<typename Ops::Vec>>& gens) {
    std::vector<EchelonBasisT<Ops>> bases;
    bases.reserve(gens.size());
    for (const auto& g : gens) {
        EchelonBasisT<Ops> e(ops, ambient);
        for (const auto& v : g)
            e.extend_in_place(v);
        bases.push_back(std::move(e));
    }
    return intersection_dim(ops, bases);
}

} // namespace rota

#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "rota/echelon.hpp"
#include "rota/errors.hpp"
#include "rota/rng.hpp"
#include "rota/tspec.hpp"

namespace rota {

// Uniform random spanning tree of the complete graph K_v by Wilson's
// algorithm: loop-erased random walks from each vertex to the growing tree.
// Returns v-1 edges as (i, j) pairs with i < j.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>>
wilson_tree(std::uint32_t v, RngStream& rng) {
    if (v < 1)
        throw InvalidTSpec("spanning tree needs at least 1 vertex");
    if (v == 1)
        return {};
    std::vector<bool> in_tree(v, false);
    std::vector<std::uint32_t> next(v, 0);
    in_tree[0] = true;
    for (std::uint32_t start = 1; start < v; ++start) {
        if (in_tree[start])
            continue;
        std::uint32_t u = start;
        while (!in_tree[u]) {
            // Uniform neighbour in K_v, i.e. any other vertex.
            std::uint32_t step = static_cast<std::uint32_t>(rng.next_below(v - 1));
            next[u] = step < u ? step : step + 1;
            u = next[u];
        }
        // Retrace; the loops were erased by overwriting next[].
        u = start;
        while (!in_tree[u]) {
            in_tree[u] = true;
            u = next[u];
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(v - 1);
    for (std::uint32_t u = 1; u < v; ++u)
        edges.emplace_back(std::min(u, next[u]), std::max(u, next[u]));
    return edges;
}

template <class Ops> struct BasisFamilyT {
    FieldSpec field;
    TSpec tspec;
    std::uint32_t n = 0;    // ambient dimension
    std::uint32_t r = 0;    // rank of span(T) = basis length = number of rows
    std::uint64_t seed = 0; // family seed; rows derive from split(row index)
    std::vector<std::vector<typename Ops::Vec>> rows; // r bases of r vectors
};

struct RejectionBudget {
    std::uint64_t attempts = 10'000;
};

// Draws one uniform element of T.
template <class Ops>
typename Ops::Vec sample_vector(const Ops& ops, const TSpec& t, RngStream& rng) {
    switch (t.kind) {
    case TKind::FullSpace: {
        typename Ops::Vec v = ops.zero(t.n);
        for (std::uint32_t i = 0; i < t.n; ++i)
            ops.set_coord(v, i,
                          static_cast<std::int64_t>(rng.next_below(ops.field().p)));
        return v;
    }
    case TKind::EntrySet: {
        auto alphabet = detail::canonical_entries(ops, t);
        typename Ops::Vec v = ops.zero(t.n);
        for (std::uint32_t i = 0; i < t.n; ++i)
            ops.set_coord(v, i, alphabet[rng.next_below(alphabet.size())]);
        return v;
    }
    case TKind::Explicit:
        return detail::vec_from_ints(ops, t.vectors[rng.next_below(t.vectors.size())]);
    case TKind::Graphic: {
        // Uniform edge of K_v: uniform index into the i<j enumeration.
        std::uint64_t m = std::uint64_t(t.n) * (t.n - 1) / 2;
        std::uint64_t x = rng.next_below(m);
        std::uint32_t i = 0;
        std::uint64_t row = t.n - 1;
        while (x >= row) {
            x -= row;
            --row;
            ++i;
        }
        return detail::edge_vector(ops, t.n, i, i + 1 + static_cast<std::uint32_t>(x));
    }
    }
    throw Error("unreachable");
}

// Draws one uniform ordered basis of span(T) with entries in T.
//
//   FullSpace  sequential per-position rejection.  Uniformity: conditioned on
//              the prefix, each extension of the partial echelon is equally
//              likely, and GL_n symmetry makes all ordered bases equivalent.
//   EntrySet / Explicit   whole-tuple rejection: draw r i.i.d. uniform
//              elements of T, accept iff independent.  Exactly uniform by
//              construction; budgeted.
//   Graphic    Wilson tree (uniform spanning tree) + uniform order.
template <class Ops>
std::vector<typename Ops::Vec>
sample_basis_tuple(const Ops& ops, const TSpec& t, RngStream& rng,
                   const RejectionBudget& budget = {}) {
    tspec_validate(ops, t);
    const std::uint32_t r = tspec_rank(t);
    std::vector<typename Ops::Vec> tuple;

    switch (t.kind) {
    case TKind::FullSpace: {
        EchelonBasisT<Ops> span(ops, t.n);
        std::uint64_t misses = 0;
        while (span.dim() < r) {
            typename Ops::Vec v = sample_vector(ops, t, rng);
            if (span.extend_in_place(v)) {
                tuple.push_back(std::move(v));
            } else if (++misses > budget.attempts) {
                throw RejectionBudgetExceeded(budget.attempts, span.dim());
            }
        }
        return tuple;
    }
    case TKind::EntrySet:
    case TKind::Explicit: {
        for (std::uint64_t attempt = 0; attempt < budget.attempts; ++attempt) {
            tuple.clear();
            EchelonBasisT<Ops> span(ops, t.n);
            bool ok = true;
            for (std::uint32_t i = 0; i < r; ++i) {
                typename Ops::Vec v = sample_vector(ops, t, rng);
                ok = span.extend_in_place(v);
                tuple.push_back(std::move(v));
                if (!ok)
                    break; // reject the whole tuple, draw a fresh one
            }
            if (ok)
                return tuple;
        }
        throw RejectionBudgetExceeded(budget.attempts, 0);
    }
    case TKind::Graphic: {
        auto edges = wilson_tree(t.n, rng);
        rng.shuffle(edges);
        for (auto [i, j] : edges)
            tuple.push_back(detail::edge_vector(ops, t.n, i, j));
        return tuple;
    }
    }
    throw Error("unreachable");
}

// count independent uniform bases, one per row; count must equal the rank
// (the decomposition needs a square family).  Row i is reproducible from
// seed alone: it uses the child stream split(i), so rows may be drawn in any
// order or in parallel without changing the result.
template <class Ops>
BasisFamilyT<Ops> sample_family(const Ops& ops, const TSpec& t, std::uint32_t count,
                                std::uint64_t seed, const RejectionBudget& budget = {}) {
    tspec_validate(ops, t);
    if (count != tspec_rank(t))
        throw Error("family needs exactly rank(T) = " +
                    std::to_string(tspec_rank(t)) + " rows, asked for " +
                    std::to_string(count));
    BasisFamilyT<Ops> fam;
    fam.field = ops.field();
    fam.tspec = t;
    fam.n = t.n;
    fam.r = tspec_rank(t);
    fam.seed = seed;
    RngStream root(seed);
    for (std::uint32_t i = 0; i < fam.r; ++i) {
        RngStream row = root.split(i);
        fam.rows.push_back(sample_basis_tuple(ops, t, row, budget));
    }
    return fam;
}

// Common case: a full square family.
template <class Ops>
BasisFamilyT<Ops> sample_family(const Ops& ops, const TSpec& t, std::uint64_t seed,
                                const RejectionBudget& budget = {}) {
    return sample_family(ops, t, tspec_rank(t), seed, budget);
}

} // namespace rota

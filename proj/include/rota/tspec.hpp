#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rota/echelon.hpp"
#include "rota/errors.hpp"
#include "rota/field.hpp"

namespace rota {

using Rational = boost::multiprecision::cpp_rational;

// Description of the vector set T that basis entries are drawn from.
//
//   FullSpace  T = F^n                      (prime fields only)
//   EntrySet   T = S^n, S a set of scalars
//   Explicit   T given as a list of vectors; must span
//   Graphic    T = { e_i - e_j : 1 <= i < j <= v } in dimension n = v,
//              whose bases are the spanning trees of K_v (rank v - 1)
enum class TKind : std::uint8_t { FullSpace, EntrySet, Explicit, Graphic };

struct TSpec {
    TKind kind = TKind::FullSpace;
    std::uint32_t n = 0; // ambient dimension (= v for Graphic)
    std::vector<std::int64_t> entries; // EntrySet
    std::vector<std::vector<std::int64_t>> vectors; // Explicit
    bool operator==(const TSpec&) const = default;

    static TSpec full_space(std::uint32_t n) { return {TKind::FullSpace, n, {}, {}}; }
    static TSpec entry_set(std::uint32_t n, std::vector<std::int64_t> s) {
        return {TKind::EntrySet, n, std::move(s), {}};
    }
    static TSpec explicit_set(std::uint32_t n, std::vector<std::vector<std::int64_t>> v) {
        return {TKind::Explicit, n, {}, std::move(v)};
    }
    static TSpec graphic(std::uint32_t v) { return {TKind::Graphic, v, {}, {}}; }
};

// Number of vectors per basis for this T: the rank of span(T).
inline std::uint32_t tspec_rank(const TSpec& t) {
    return t.kind == TKind::Graphic ? t.n - 1 : t.n;
}

// Materialized vector set.  Invariant: entries are distinct and share one
// ambient dimension.
template <class Ops> struct TSetT {
    std::uint32_t n = 0;
    std::vector<typename Ops::Vec> vecs;
};

namespace detail {

template <class Ops>
typename Ops::Vec vec_from_ints(const Ops& ops, const std::vector<std::int64_t>& xs) {
    typename Ops::Vec v = ops.zero(static_cast<std::uint32_t>(xs.size()));
    for (std::uint32_t i = 0; i < xs.size(); ++i)
        ops.set_coord(v, i, xs[i]);
    return v;
}

// e_i - e_j as a vector of dimension v (i < j).
template <class Ops>
typename Ops::Vec edge_vector(const Ops& ops, std::uint32_t v, std::uint32_t i,
                              std::uint32_t j) {
    typename Ops::Vec e = ops.zero(v);
    ops.set_coord(e, i, 1);
    ops.set_coord(e, j, -1);
    return e;
}

// Distinct canonical scalars of an entry set, as backend coordinates.
template <class Ops>
std::vector<std::int64_t> canonical_entries(const Ops& ops, const TSpec& t) {
    std::vector<std::int64_t> out;
    for (std::int64_t e : t.entries) {
        typename Ops::Vec probe = ops.zero(1);
        ops.set_coord(probe, 0, e);
        std::int64_t canon = ops.coord(probe, 0);
        for (std::int64_t seen : out)
            if (seen == canon)
                throw InvalidTSpec("entry set has a repeated element");
        out.push_back(canon);
    }
    return out;
}

} // namespace detail

// Validates a TSpec against a field; throws InvalidTSpec on structural
// problems.  Explicit sets are additionally checked to span F^n, except when
// the caller only wants a raw set (the dispersedness checker accepts
// non-spanning T on purpose: its counterexamples usually don't span).
template <class Ops>
void tspec_validate(const Ops& ops, const TSpec& t, bool require_span = true) {
    switch (t.kind) {
    case TKind::FullSpace:
        if (ops.field().mode != FieldMode::Prime)
            throw InvalidTSpec("full-space T needs a finite field");
        if (t.n < 1)
            throw InvalidTSpec("dimension must be at least 1");
        break;
    case TKind::EntrySet: {
        if (t.n < 1)
            throw InvalidTSpec("dimension must be at least 1");
        // Entries must be distinct scalars and there must be two of them;
        // then S^n always spans (it contains a translate of {0,1}^n scaled
        // by a nonzero difference).
        if (detail::canonical_entries(ops, t).size() < 2)
            throw InvalidTSpec("entry set needs at least 2 distinct scalars");
        break;
    }
    case TKind::Explicit: {
        if (t.vectors.empty())
            throw InvalidTSpec("explicit T is empty");
        std::vector<typename Ops::Vec> vs;
        for (const auto& raw : t.vectors) {
            if (raw.size() != t.n)
                throw InvalidTSpec("explicit vector has wrong dimension");
            vs.push_back(detail::vec_from_ints(ops, raw));
        }
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                if (ops.equal(vs[a], vs[b]))
                    throw InvalidTSpec("explicit T has a repeated vector");
        if (require_span && rank_of(ops, t.n, vs) != t.n)
            throw InvalidTSpec("explicit T does not span F^n");
        break;
    }
    case TKind::Graphic:
        if (t.n < 2)
            throw InvalidTSpec("graphic T needs at least 2 vertices");
        break;
    }
}

// Materializes T.  The budget caps |T|; FullSpace and EntrySet sizes grow as
// p^n and |S|^n, so big instances must be sampled, not enumerated.
template <class Ops>
TSetT<Ops> t_enumerate(const Ops& ops, const TSpec& t,
                       std::uint64_t budget = std::uint64_t(1) << 22,
                       bool require_span = true) {
    tspec_validate(ops, t, require_span);
    TSetT<Ops> out;
    out.n = t.n;
    auto guard = [&](double size_estimate) {
        if (size_estimate > static_cast<double>(budget))
            throw TooLarge("T has about " + std::to_string(size_estimate) +
                           " vectors, budget is " + std::to_string(budget));
    };
    switch (t.kind) {
    case TKind::FullSpace:
    case TKind::EntrySet: {
        std::vector<std::int64_t> alphabet;
        if (t.kind == TKind::FullSpace) {
            for (std::uint64_t x = 0; x < ops.field().p; ++x)
                alphabet.push_back(static_cast<std::int64_t>(x));
        } else {
            alphabet = detail::canonical_entries(ops, t);
        }
        double size = 1;
        for (std::uint32_t i = 0; i < t.n; ++i)
            size *= static_cast<double>(alphabet.size());
        guard(size);
        std::vector<std::size_t> idx(t.n, 0);
        for (;;) {
            typename Ops::Vec v = ops.zero(t.n);
            for (std::uint32_t i = 0; i < t.n; ++i)
                ops.set_coord(v, i, alphabet[idx[i]]);
            out.vecs.push_back(std::move(v));
            std::uint32_t pos = 0;
            while (pos < t.n && ++idx[pos] == alphabet.size())
                idx[pos++] = 0;
            if (pos == t.n)
                break;
        }
        break;
    }
    case TKind::Explicit:
        for (const auto& raw : t.vectors)
            out.vecs.push_back(detail::vec_from_ints(ops, raw));
        break;
    case TKind::Graphic:
        guard(0.5 * t.n * (t.n - 1));
        for (std::uint32_t i = 0; i < t.n; ++i)
            for (std::uint32_t j = i + 1; j < t.n; ++j)
                out.vecs.push_back(detail::edge_vector(ops, t.n, i, j));
        break;
    }
    return out;
}

// Counterexample to c-dispersedness: an independent subset U ⊆ T whose span
// V meets T in more than c^(n - dim V) * |T| points.
template <class Ops> struct DispersednessWitness {
    std::vector<typename Ops::Vec> subset; // U ⊆ T, independent, spans V
    std::vector<std::uint32_t> subset_idx; // indices of U within the TSet
    std::uint32_t dim = 0;                 // dim V = |U|
    std::uint64_t hits = 0;                // |V ∩ T|
    Rational threshold;                    // c^(n - dim V) * |T|
};

// Checks |V ∩ T| <= c^(n - dim V) * |T| for every subspace V.  It suffices
// to scan V spanned by independent subsets of T: replacing a violating V by
// span(V ∩ T) keeps the hit count and can only shrink the dimension, which
// tightens the threshold.  Work is metered in subset evaluations; past the
// budget the scan aborts with TooLarge rather than answering approximately.
template <class Ops>
std::optional<DispersednessWitness<Ops>>
is_dispersed(const Ops& ops, const TSetT<Ops>& tset, const Rational& c,
             std::uint64_t budget = std::uint64_t(1) << 20) {
    if (c <= 0 || c >= 1)
        throw Error("dispersedness constant must lie in (0,1)");
    if (tset.vecs.empty())
        throw EmptyList("dispersedness needs |T| >= 1");
    const std::uint32_t n = tset.n;
    const std::uint64_t total = tset.vecs.size();
    std::uint64_t evaluated = 0;

    // c^(n-d) * |T| for d = 0..n, exact.
    std::vector<Rational> threshold(n + 1);
    for (std::uint32_t d = 0; d <= n; ++d) {
        Rational pw = 1;
        for (std::uint32_t i = 0; i < n - d; ++i)
            pw *= c;
        threshold[d] = pw * total;
    }

    std::optional<DispersednessWitness<Ops>> found;
    std::vector<std::uint32_t> chosen;
    // DFS over independent subsets, extending by T-elements of larger index.
    auto visit = [&](auto&& self, const EchelonBasisT<Ops>& span,
                     std::size_t first) -> bool {
        if (++evaluated > budget)
            throw TooLarge("dispersedness scan exceeded its subset budget");
        std::uint64_t hits = 0;
        for (const auto& t : tset.vecs)
            if (span.contains(t))
                ++hits;
        if (Rational(hits) > threshold[span.dim()]) {
            DispersednessWitness<Ops> w;
            for (std::uint32_t i : chosen)
                w.subset.push_back(tset.vecs[i]);
            w.subset_idx = chosen;
            w.dim = span.dim();
            w.hits = hits;
            w.threshold = threshold[span.dim()];
            found = std::move(w);
            return true;
        }
        if (span.dim() + 1 >= n)
            return false; // proper subspaces only; V = F^n never violates
        for (std::size_t i = first; i < tset.vecs.size(); ++i) {
            if (auto ext = span.try_extend(tset.vecs[i])) {
                chosen.push_back(static_cast<std::uint32_t>(i));
                if (self(self, *ext, i + 1))
                    return true;
                chosen.pop_back();
            }
        }
        return false;
    };
    visit(visit, EchelonBasisT<Ops>(ops, n), 0);
    return found;
}

} // namespace rota

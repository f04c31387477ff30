#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "rota/errors.hpp"
#include "rota/zz.hpp"

namespace rota {

// Incrementally maintained reduced row echelon basis of a subspace.
//
// Invariants: pivot columns are strictly increasing; each row is normalized
// at its pivot; every other row is zero in that pivot column.  All public
// operations preserve these, so membership tests are a single reduction pass.
template <class Ops> class EchelonBasisT {
  public:
    using Vec = typename Ops::Vec;

    EchelonBasisT() = default;
    EchelonBasisT(Ops ops, std::uint32_t ambient) : ops_(ops), ambient_(ambient) {}

    std::uint32_t ambient() const { return ambient_; }
    std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }

    bool contains(Vec v) const {
        check(v);
        reduce(v);
        return ops_.is_zero(v);
    }

    // Mutating insert.  Returns true if the dimension grew, false if v was
    // already in the span (the basis is untouched in that case).
    bool extend_in_place(Vec v) {
        check(v);
        reduce(v);
        auto p = ops_.leading(v);
        if (!p)
            return false;
        ops_.normalize(v, *p);
        for (std::size_t k = 0; k < rows_.size(); ++k)
            ops_.eliminate(rows_[k], v, *p);
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < *p)
            ++at;
        rows_.insert(rows_.begin() + at, std::move(v));
        pivots_.insert(pivots_.begin() + at, *p);
        return true;
    }

    // Persistent insert: *this is never modified.  Returns the grown basis,
    // or nullopt if v is already in the span.
    std::optional<EchelonBasisT> try_extend(const Vec& v) const {
        EchelonBasisT next(*this);
        if (!next.extend_in_place(v))
            return std::nullopt;
        return next;
    }

    const Ops& ops() const { return ops_; }

  private:
    void check(const Vec& v) const {
        if (ops_.dim(v) != ambient_)
            throw DimensionMismatch("vector has dimension " +
                                    std::to_string(ops_.dim(v)) + ", ambient is " +
                                    std::to_string(ambient_));
    }
    void reduce(Vec& v) const {
        // eliminate() is a no-op on a zero coefficient, so no guard here;
        // the GF(2) backend relies on the unconditional call being branchless.
        for (std::size_t k = 0; k < rows_.size(); ++k)
            ops_.eliminate(v, rows_[k], pivots_[k]);
    }

    Ops ops_;
    std::uint32_t ambient_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::uint32_t> pivots_;
};

// One-shot rank.  The integer backend routes through Bareiss so a single
// matrix pass suffices; field backends reuse the echelon machinery.
template <class Ops>
std::uint32_t rank_of(const Ops& ops, std::uint32_t ambient,
                      std::span<const typename Ops::Vec> vecs) {
    for (const auto& v : vecs)
        if (ops.dim(v) != ambient)
            throw DimensionMismatch("rank: mixed ambient dimensions");
    if constexpr (std::is_same_v<Ops, ZZOps>) {
        std::vector<std::vector<BigInt>> m;
        m.reserve(vecs.size());
        for (const auto& v : vecs)
            m.push_back(v.c);
        return bareiss_rank(std::move(m));
    } else {
        EchelonBasisT<Ops> e(ops, ambient);
        for (const auto& v : vecs)
            e.extend_in_place(v);
        return e.dim();
    }
}

template <class Ops>
std::uint32_t rank_of(const Ops& ops, std::uint32_t ambient,
                      const std::vector<typename Ops::Vec>& vecs) {
    return rank_of(ops, ambient, std::span<const typename Ops::Vec>(vecs));
}

// A multiset is independent iff its rank equals its size; a repeated vector
// therefore makes it dependent.
template <class Ops>
bool multiset_independent(const Ops& ops, std::uint32_t ambient,
                          const std::vector<typename Ops::Vec>& vecs) {
    return rank_of(ops, ambient, vecs) == vecs.size();
}

} // namespace rota

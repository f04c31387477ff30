#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rota/echelon.hpp"
#include "rota/gf2.hpp"
#include "rota/graph.hpp"
#include "rota/intersect.hpp"
#include "rota/matching.hpp"
#include "rota/rng.hpp"
#include "rota/sample.hpp"

namespace rota {

// View of a family as column multisets under a per-row ordering.
//
//   X_j = { rows[i][order[i][j]] : 0 <= i < n' }        (first n' rows)
//   Y_j = { rows[n'+i][order[n'+i][j]] : 0 <= i < r-n' } (remaining rows)
//
// order starts as the identity; decompose retries install fresh uniform
// permutations per row.  The view never copies vectors.
template <class Ops> struct SplitViewT {
    const BasisFamilyT<Ops>* fam = nullptr;
    std::uint32_t n_prime = 0;
    std::vector<std::vector<std::uint32_t>> order; // order[i][j] = source position

    std::uint32_t r() const { return fam->r; }
    std::uint32_t x_size() const { return n_prime; }
    std::uint32_t y_size() const { return fam->r - n_prime; }

    const typename Ops::Vec& x_elem(std::uint32_t j, std::uint32_t i) const {
        return fam->rows[i][order[i][j]];
    }
    const typename Ops::Vec& y_elem(std::uint32_t j, std::uint32_t i) const {
        return fam->rows[n_prime + i][order[n_prime + i][j]];
    }
};

template <class Ops>
SplitViewT<Ops> split(const BasisFamilyT<Ops>& fam, std::uint32_t n_prime) {
    if (n_prime != fam.r / 2 && n_prime != (fam.r + 1) / 2)
        throw BadSplitPoint("n' must be floor(r/2) or ceil(r/2), got " +
                            std::to_string(n_prime) + " for r = " +
                            std::to_string(fam.r));
    SplitViewT<Ops> sv;
    sv.fam = &fam;
    sv.n_prime = n_prime;
    sv.order.assign(fam.r, {});
    for (std::uint32_t i = 0; i < fam.r; ++i) {
        sv.order[i].resize(fam.r);
        for (std::uint32_t j = 0; j < fam.r; ++j)
            sv.order[i][j] = j;
    }
    return sv;
}

// Index range [lo, hi) used for the halves-mode induced subgraphs.
struct GraphRange {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
};

namespace detail {

// Flat triangular echelon buffers for the GF(2) fast path.  Rows are kept in
// insertion order; each row is zero at all earlier pivots, so one in-order
// elimination pass fully reduces a fresh vector.
template <std::uint32_t W> struct FlatEchelonW {
    std::vector<std::uint64_t> rows;  // count * W words
    std::vector<std::uint32_t> piv;
    std::uint32_t count = 0;

    void reset() {
        count = 0;
        piv.clear();
    }
    void reserve(std::uint32_t cap) { rows.resize(std::size_t(cap) * W); }

    // In-order branchless elimination of v against all rows.
    void reduce(std::uint64_t* v) const {
        const std::uint64_t* rp = rows.data();
        for (std::uint32_t k = 0; k < count; ++k, rp += W) {
            std::uint32_t p = piv[k];
            std::uint64_t mask = std::uint64_t(0) - ((v[p >> 6] >> (p & 63)) & 1);
            for (std::uint32_t w = 0; w < W; ++w)
                v[w] ^= rp[w] & mask;
        }
    }
    // Appends v (assumed already reduced against these rows); returns false
    // if v is zero.
    bool append(const std::uint64_t* v) {
        std::uint32_t p = 0;
        bool nonzero = false;
        for (std::uint32_t w = 0; w < W; ++w) {
            if (v[w]) {
                p = w * 64 + static_cast<std::uint32_t>(std::countr_zero(v[w]));
                nonzero = true;
                break;
            }
        }
        if (!nonzero)
            return false;
        std::uint64_t* dst = rows.data() + std::size_t(count) * W;
        for (std::uint32_t w = 0; w < W; ++w)
            dst[w] = v[w];
        piv.push_back(p);
        ++count;
        return true;
    }
};

// GF(2) fast path: per left vertex h build the X_h echelon once, then probe
// every Y_j against it.  Word count is a template parameter so the XOR loops
// unroll fully.
template <std::uint32_t W>
void build_graph_gf2_w(const SplitViewT<Gf2Ops>& sv, const GraphRange& lr,
                       const GraphRange& rr, IndependenceGraph& g) {
    const std::uint32_t nx = sv.x_size(), ny = sv.y_size();
    FlatEchelonW<W> xe, ye;
    xe.reserve(nx);
    ye.reserve(ny);
    std::uint64_t v[W];
    for (std::uint32_t h = lr.lo; h < lr.hi; ++h) {
        xe.reset();
        bool x_ok = true;
        for (std::uint32_t i = 0; i < nx && x_ok; ++i) {
            const Gf2Vec& src = sv.x_elem(h, i);
            for (std::uint32_t w = 0; w < W; ++w)
                v[w] = src.w[w];
            xe.reduce(v);
            x_ok = xe.append(v);
        }
        if (!x_ok)
            continue; // X_h dependent: no edges at h
        for (std::uint32_t j = rr.lo; j < rr.hi; ++j) {
            ye.reset();
            bool ok = true;
            for (std::uint32_t i = 0; i < ny && ok; ++i) {
                const Gf2Vec& src = sv.y_elem(j, i);
                for (std::uint32_t w = 0; w < W; ++w)
                    v[w] = src.w[w];
                xe.reduce(v);
                ye.reduce(v);
                ok = ye.append(v);
            }
            if (ok)
                g.set_edge(h - lr.lo, j - rr.lo);
        }
    }
}

} // namespace detail

// edge(h, j) <=> multiset X_h ∪ Y_j is linearly independent.  The ranges
// select induced subgraphs for halves mode; graph indices are local to the
// ranges.  Cost structure: one echelon per X_h, shared across all j probes.
template <class Ops>
IndependenceGraph build_graph(const Ops& ops, const SplitViewT<Ops>& sv,
                              std::optional<GraphRange> restrict_to = {}) {
    const std::uint32_t r = sv.r();
    GraphRange range = restrict_to.value_or(GraphRange{0, r});
    if (range.lo > range.hi || range.hi > r)
        throw Error("graph range out of bounds");
    IndependenceGraph g(range.hi - range.lo, range.hi - range.lo);

    if constexpr (std::is_same_v<Ops, Gf2Ops>) {
        const std::uint32_t words = (sv.fam->n + 63) / 64;
        switch (words) {
        case 1: detail::build_graph_gf2_w<1>(sv, range, range, g); return g;
        case 2: detail::build_graph_gf2_w<2>(sv, range, range, g); return g;
        case 3: detail::build_graph_gf2_w<3>(sv, range, range, g); return g;
        case 4: detail::build_graph_gf2_w<4>(sv, range, range, g); return g;
        default: break; // n > 256 falls through to the generic path
        }
    }

    const std::uint32_t n = sv.fam->n;
    for (std::uint32_t h = range.lo; h < range.hi; ++h) {
        EchelonBasisT<Ops> base(ops, n);
        bool x_ok = true;
        for (std::uint32_t i = 0; i < sv.x_size() && x_ok; ++i)
            x_ok = base.extend_in_place(sv.x_elem(h, i));
        if (!x_ok)
            continue;
        for (std::uint32_t j = range.lo; j < range.hi; ++j) {
            EchelonBasisT<Ops> probe(base);
            bool ok = true;
            for (std::uint32_t i = 0; i < sv.y_size() && ok; ++i)
                ok = probe.extend_in_place(sv.y_elem(j, i));
            if (ok)
                g.set_edge(h - range.lo, j - range.lo);
        }
    }
    return g;
}

enum class DecomposeMode : std::uint8_t { Full, Halves };

enum class FailureStage : std::uint8_t { None, FullGraph, FirstHalf, SecondHalf, Sampler };

inline const char* failure_stage_name(FailureStage s) {
    switch (s) {
    case FailureStage::None: return "none";
    case FailureStage::FullGraph: return "full-graph";
    case FailureStage::FirstHalf: return "first-half";
    case FailureStage::SecondHalf: return "second-half";
    case FailureStage::Sampler: return "sampler";
    }
    return "?";
}

struct DecomposeOptions {
    DecomposeMode mode = DecomposeMode::Full;
    std::optional<std::uint32_t> n_prime; // default floor(r/2)
    std::uint32_t retries = 3;
};

// class k lists (basis index i, position j) provenance pairs, 0-based.
struct Decomposition {
    std::uint32_t r = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> classes;
};

struct Diagnostics {
    std::uint32_t attempts = 0; // matching attempts performed
    bool first_attempt_success = false;
    DegreeStats degrees;        // graph(s) built on the FIRST attempt
    std::uint32_t matching_size = 0; // total matched on the first attempt
    FailureStage failure_stage = FailureStage::None; // last attempt, on failure
    std::vector<std::uint32_t> deficient_left; // global column indices
    std::vector<std::uint32_t> deficient_nbhd;
};

struct DecomposeResult {
    bool success = false;
    Decomposition dec;  // meaningful when success
    Diagnostics diag;
};

enum class ViolationKind : std::uint8_t { Shape, NotPermutation, BasisReuse, ClassNotBasis };

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct VerifyReport {
    bool ok = true;
    std::vector<Violation> violations;
};

// Independent re-check of a claimed decomposition: (a) per basis, the used
// positions form a permutation; (b) each class takes exactly one vector from
// each basis; (c) each class has full rank.  Shares nothing with decompose's
// construction beyond the rank routine.
template <class Ops>
VerifyReport verify(const Ops& ops, const BasisFamilyT<Ops>& fam,
                    const Decomposition& d) {
    VerifyReport rep;
    auto flag = [&rep](ViolationKind k, std::string s) {
        rep.ok = false;
        rep.violations.push_back({k, std::move(s)});
    };
    const std::uint32_t r = fam.r;
    if (d.r != r || d.classes.size() != r) {
        flag(ViolationKind::Shape, "expected " + std::to_string(r) + " classes");
        return rep;
    }
    // positions seen per basis, across all classes
    std::vector<std::vector<std::uint32_t>> seen(r, std::vector<std::uint32_t>(r, 0));
    for (std::uint32_t k = 0; k < r; ++k) {
        const auto& cls = d.classes[k];
        std::vector<std::uint32_t> per_basis(r, 0);
        std::vector<typename Ops::Vec> vecs;
        for (auto [i, j] : cls) {
            if (i >= r || j >= r) {
                flag(ViolationKind::Shape, "class " + std::to_string(k) +
                                               " references basis " + std::to_string(i) +
                                               " position " + std::to_string(j));
                return rep;
            }
            ++per_basis[i];
            ++seen[i][j];
            vecs.push_back(fam.rows[i][j]);
        }
        for (std::uint32_t i = 0; i < r; ++i)
            if (per_basis[i] != 1)
                flag(ViolationKind::BasisReuse,
                     "class " + std::to_string(k) + " uses basis " + std::to_string(i) +
                         " " + std::to_string(per_basis[i]) + " times");
        if (cls.size() == r && rank_of(ops, fam.n, vecs) != r)
            flag(ViolationKind::ClassNotBasis,
                 "class " + std::to_string(k) + " is not a basis");
    }
    for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t j = 0; j < r; ++j)
            if (seen[i][j] != 1)
                flag(ViolationKind::NotPermutation,
                     "basis " + std::to_string(i) + " position " + std::to_string(j) +
                         " used " + std::to_string(seen[i][j]) + " times");
    return rep;
}

namespace detail {

// Merge left/right degree arrays of the two half graphs into family-indexed
// diagnostics (full mode passes a single graph covering everything).
inline DegreeStats merge_halves_stats(const DegreeStats& a, const DegreeStats& b,
                                      std::uint32_t np) {
    DegreeStats s;
    s.left_degrees = a.left_degrees;
    s.left_degrees.insert(s.left_degrees.end(), b.left_degrees.begin(),
                          b.left_degrees.end());
    s.right_degrees = a.right_degrees;
    s.right_degrees.insert(s.right_degrees.end(), b.right_degrees.begin(),
                           b.right_degrees.end());
    s.min_left = std::min(a.min_left, b.min_left);
    s.min_right = std::min(a.min_right, b.min_right);
    double wa = static_cast<double>(np) * np;
    double wb = s.left_degrees.size() > np
                    ? static_cast<double>(s.left_degrees.size() - np) *
                          (s.left_degrees.size() - np)
                    : 0.0;
    s.density = (wa + wb) > 0 ? (a.density * wa + b.density * wb) / (wa + wb) : 0.0;
    return s;
}

} // namespace detail

// The half-split construction: order each row, split rows at n', build the
// independence graph(s), match, and read transversal classes off the
// matching.  On matching failure, remaining retries re-randomize the within-
// row orderings (the ordered-tuple distribution is exchangeable, so this
// preserves the sampling semantics) and try again.  Every Success is
// re-verified internally before being returned.
template <class Ops>
DecomposeResult decompose(const Ops& ops, const BasisFamilyT<Ops>& fam,
                          const DecomposeOptions& opt = {}) {
    const std::uint32_t r = fam.r;
    if (r == 0)
        throw Error("cannot decompose an empty family");
    const std::uint32_t np = opt.n_prime.value_or(r / 2);
    if (opt.mode == DecomposeMode::Halves && r < 2)
        throw BadSplitPoint("halves mode needs r >= 2");

    DecomposeResult out;
    SplitViewT<Ops> sv = split(fam, np);
    RngStream reorder_root = RngStream(fam.seed).split(0x7265f1a6);

    for (std::uint32_t attempt = 0; attempt <= opt.retries; ++attempt) {
        if (attempt > 0) {
            RngStream a = reorder_root.split(attempt);
            for (std::uint32_t i = 0; i < r; ++i) {
                RngStream rowstream = a.split(i);
                sv.order[i] = rowstream.permutation(r);
            }
        }
        out.diag.attempts = attempt + 1;

        // matched_right_for_left[h] = j matched with X_h, covering all h.
        std::vector<std::int32_t> match(r, -1);
        bool ok = true;
        if (opt.mode == DecomposeMode::Full) {
            IndependenceGraph g = build_graph(ops, sv);
            MatchingResult m = max_matching(g);
            if (attempt == 0) {
                out.diag.degrees = degree_stats(g);
                out.diag.matching_size = m.size;
            }
            if (m.size < r) {
                ok = false;
                out.diag.failure_stage = FailureStage::FullGraph;
                out.diag.deficient_left = m.deficient_left;
                out.diag.deficient_nbhd = m.deficient_nbhd;
            } else {
                for (std::uint32_t h = 0; h < r; ++h)
                    match[h] = m.pair_left[h];
            }
        } else {
            GraphRange g1{0, np}, g2{np, r};
            IndependenceGraph a = build_graph(ops, sv, g1);
            IndependenceGraph b = build_graph(ops, sv, g2);
            MatchingResult ma = max_matching(a);
            MatchingResult mb = max_matching(b);
            if (attempt == 0) {
                out.diag.degrees =
                    detail::merge_halves_stats(degree_stats(a), degree_stats(b), np);
                out.diag.matching_size = ma.size + mb.size;
            }
            if (ma.size < np) {
                ok = false;
                out.diag.failure_stage = FailureStage::FirstHalf;
                out.diag.deficient_left = ma.deficient_left;
                out.diag.deficient_nbhd = ma.deficient_nbhd;
            } else if (mb.size < r - np) {
                ok = false;
                out.diag.failure_stage = FailureStage::SecondHalf;
                out.diag.deficient_left = mb.deficient_left;
                out.diag.deficient_nbhd = mb.deficient_nbhd;
                for (auto& v : out.diag.deficient_left)
                    v += np;
                for (auto& v : out.diag.deficient_nbhd)
                    v += np;
            } else {
                for (std::uint32_t h = 0; h < np; ++h)
                    match[h] = ma.pair_left[h];
                for (std::uint32_t h = np; h < r; ++h)
                    match[h] = mb.pair_left[h - np] + static_cast<std::int32_t>(np);
            }
        }

        if (!ok)
            continue;

        if (attempt == 0)
            out.diag.first_attempt_success = true;
        out.diag.failure_stage = FailureStage::None;
        out.diag.deficient_left.clear();
        out.diag.deficient_nbhd.clear();
        out.dec.r = r;
        out.dec.classes.assign(r, {});
        for (std::uint32_t h = 0; h < r; ++h) {
            std::uint32_t j = static_cast<std::uint32_t>(match[h]);
            auto& cls = out.dec.classes[h];
            for (std::uint32_t i = 0; i < np; ++i)
                cls.emplace_back(i, sv.order[i][h]);
            for (std::uint32_t i = np; i < r; ++i)
                cls.emplace_back(i, sv.order[i][j]);
        }
        if (!verify(ops, fam, out.dec).ok)
            throw Error("internal error: constructed decomposition failed verify");
        out.success = true;
        return out;
    }
    out.success = false;
    return out;
}

struct BadPair {
    std::vector<std::uint32_t> H; // left indices, 0-based
    std::uint32_t j = 0;
    std::uint32_t k = 0;
};

// Exhaustive scan for (H, j, k) with dim(∩_{h∈H} span(X_h ∪ Y_j^{(k)})) >
// r - k|H|, over 1 <= |H| <= L_max, 1 <= k <= K_max.  Desk scale: the H
// enumeration is exponential, so a work budget caps the number of dimension
// evaluations.
template <class Ops>
std::vector<BadPair> bad_pairs(const Ops& ops, const SplitViewT<Ops>& sv,
                               std::uint32_t L_max, std::uint32_t K_max,
                               std::uint64_t budget = std::uint64_t(1) << 20) {
    const std::uint32_t r = sv.r();
    const std::uint32_t n = sv.fam->n;
    const std::uint32_t ny = sv.y_size();
    const std::uint32_t k_hi = std::min(K_max, ny);
    const std::uint32_t l_hi = std::min(L_max, r);

    // span(X_h ∪ Y_j^{(k)}) for all h, j, k: built once, reused across H.
    // Index: sub[h][j][k-1].
    std::vector<std::vector<std::vector<EchelonBasisT<Ops>>>> sub(
        r, std::vector<std::vector<EchelonBasisT<Ops>>>(r));
    for (std::uint32_t h = 0; h < r; ++h) {
        EchelonBasisT<Ops> xh(ops, n);
        for (std::uint32_t i = 0; i < sv.x_size(); ++i)
            xh.extend_in_place(sv.x_elem(h, i));
        for (std::uint32_t j = 0; j < r; ++j) {
            // Build incrementally from the longest truncation down: start
            // from X_h, add Y_j elements 0..ny-k-1.
            std::vector<EchelonBasisT<Ops>>& per_k = sub[h][j];
            per_k.resize(k_hi, EchelonBasisT<Ops>(ops, n));
            EchelonBasisT<Ops> acc = xh;
            std::uint32_t next = 0;
            for (std::uint32_t k = k_hi; k >= 1; --k) {
                // Y_j^{(k)} keeps the first ny - k elements of Y_j.
                while (next + k < ny) {
                    acc.extend_in_place(sv.y_elem(j, next));
                    ++next;
                }
                per_k[k - 1] = acc;
            }
        }
    }

    std::uint64_t work = 0;
    std::vector<BadPair> found;
    std::vector<std::uint32_t> H;
    std::vector<EchelonBasisT<Ops>> stack_subspaces;

    auto scan = [&](auto&& self, std::uint32_t first) -> void {
        if (!H.empty()) {
            for (std::uint32_t j = 0; j < r; ++j) {
                for (std::uint32_t k = 1; k <= k_hi; ++k) {
                    if (++work > budget)
                        throw TooLarge("bad-pair scan exceeded its budget");
                    stack_subspaces.clear();
                    for (std::uint32_t h : H)
                        stack_subspaces.push_back(sub[h][j][k - 1]);
                    std::uint32_t dim = intersection_dim(ops, stack_subspaces);
                    std::int64_t bound = static_cast<std::int64_t>(r) -
                                         static_cast<std::int64_t>(k) * H.size();
                    if (static_cast<std::int64_t>(dim) > bound)
                        found.push_back({H, j, k});
                }
            }
        }
        if (H.size() >= l_hi)
            return;
        for (std::uint32_t h = first; h < r; ++h) {
            H.push_back(h);
            self(self, h + 1);
            H.pop_back();
        }
    };
    scan(scan, 0);
    return found;
}

} // namespace rota

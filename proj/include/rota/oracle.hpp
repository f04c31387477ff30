#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "rota/decompose.hpp"
#include "rota/echelon.hpp"
#include "rota/sample.hpp"

namespace rota {

// Limits for exhaustive searches.  Exceeding either produces an explicit
// Indeterminate outcome, never a silent wrong answer.
struct SearchBudget {
    std::uint64_t node_limit = 10'000'000;
    double time_limit_sec = 120.0;
};

enum class OracleStatus : std::uint8_t { Found, NoneExists, Indeterminate };

struct OracleResult {
    OracleStatus status = OracleStatus::Indeterminate;
    std::optional<Decomposition> dec; // set when Found
    std::uint64_t nodes = 0;
};

// Exhaustive decision procedure for the decomposition problem: build class k
// by choosing one unused position from each basis in index order, pruning a
// partial class as soon as it goes rank-deficient.  Classes are unordered,
// so we canonicalize by forcing class k to take position k of basis 0; the
// search is still exhaustive over distinct partitions.
template <class Ops>
OracleResult oracle_decompose(const Ops& ops, const BasisFamilyT<Ops>& fam,
                              const SearchBudget& budget = {}) {
    const std::uint32_t r = fam.r;
    OracleResult res;
    if (r == 0) {
        res.status = OracleStatus::Found;
        res.dec = Decomposition{0, {}};
        return res;
    }

    std::vector<std::vector<bool>> used(r, std::vector<bool>(r, false));
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> classes(r);
    std::vector<EchelonBasisT<Ops>> spans;
    spans.reserve(r);
    const auto t0 = std::chrono::steady_clock::now();
    bool out_of_budget = false;

    // Fills class k starting at basis i (basis 0 is pre-assigned).
    auto search = [&](auto&& self, std::uint32_t k, std::uint32_t i) -> bool {
        if (++res.nodes >= budget.node_limit) {
            out_of_budget = true;
            return false;
        }
        if ((res.nodes & 0xfff) == 0) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
            if (el > budget.time_limit_sec) {
                out_of_budget = true;
                return false;
            }
        }
        if (i == r)
            return self(self, k + 1, 0); // class complete, move on
        if (i == 0) {
            if (k == r)
                return true; // all classes complete
            // Symmetry breaking: class k takes position k of basis 0.
            spans.emplace_back(ops, fam.n);
            if (!spans.back().extend_in_place(fam.rows[0][k])) {
                spans.pop_back();
                return false; // zero vector cannot happen in a valid family
            }
            classes[k].assign(1, {0u, k});
            bool found = self(self, k, 1);
            if (!found) {
                spans.pop_back();
                classes[k].clear();
            }
            return found;
        }
        for (std::uint32_t j = 0; j < r && !out_of_budget; ++j) {
            if (used[i][j])
                continue;
            if (auto ext = spans.back().try_extend(fam.rows[i][j])) {
                used[i][j] = true;
                classes[k].emplace_back(i, j);
                EchelonBasisT<Ops> saved = std::move(spans.back());
                spans.back() = std::move(*ext);
                if (self(self, k, i + 1))
                    return true;
                spans.back() = std::move(saved);
                classes[k].pop_back();
                used[i][j] = false;
            }
        }
        return false;
    };

    bool found = search(search, 0, 0);
    if (found) {
        res.status = OracleStatus::Found;
        Decomposition d;
        d.r = r;
        d.classes = classes;
        res.dec = d;
        if (!verify(ops, fam, d).ok)
            throw Error("internal error: oracle decomposition failed verify");
    } else {
        res.status = out_of_budget ? OracleStatus::Indeterminate : OracleStatus::NoneExists;
    }
    return res;
}

// Maximum matching size by exhaustive search (left vertices in order, each
// either skipped or matched to a free neighbour).  Obviously correct, used
// to validate the Hopcroft-Karp path.
inline std::uint32_t oracle_matching(const IndependenceGraph& g) {
    if (g.m_left > 10 || g.m_right > 10)
        throw TooLarge("matching oracle is exhaustive; m must be <= 10");
    std::vector<bool> taken(g.m_right, false);
    std::uint32_t best = 0;
    auto go = [&](auto&& self, std::uint32_t h, std::uint32_t acc) -> void {
        if (h == g.m_left) {
            best = std::max(best, acc);
            return;
        }
        // Prune: even matching every remaining vertex cannot beat best.
        if (acc + (g.m_left - h) <= best)
            return;
        self(self, h + 1, acc); // leave h unmatched
        for (std::uint32_t j = 0; j < g.m_right; ++j) {
            if (!taken[j] && g.edge(h, j)) {
                taken[j] = true;
                self(self, h + 1, acc + 1);
                taken[j] = false;
            }
        }
    };
    go(go, 0, 0);
    return best;
}

// The exact support of sample_basis_tuple: every ordered independent
// r-tuple over T, in lexicographic T-index order.
template <class Ops>
std::vector<std::vector<typename Ops::Vec>>
enumerate_ordered_bases(const Ops& ops, const TSpec& t,
                        std::uint64_t budget = std::uint64_t(1) << 24) {
    TSetT<Ops> tset = t_enumerate(ops, t);
    const std::uint32_t r = tspec_rank(t);
    double size = 1;
    for (std::uint32_t i = 0; i < r; ++i)
        size *= static_cast<double>(tset.vecs.size());
    if (size > static_cast<double>(budget))
        throw TooLarge("|T|^r exceeds the enumeration budget");

    std::vector<std::vector<typename Ops::Vec>> out;
    std::vector<std::uint32_t> pick(r, 0);
    std::vector<typename Ops::Vec> cur;
    auto go = [&](auto&& self, std::uint32_t depth, const EchelonBasisT<Ops>& span) -> void {
        if (depth == r) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t i = 0; i < tset.vecs.size(); ++i) {
            if (auto ext = span.try_extend(tset.vecs[i])) {
                cur.push_back(tset.vecs[i]);
                self(self, depth + 1, *ext);
                cur.pop_back();
            }
        }
    };
    go(go, 0, EchelonBasisT<Ops>(ops, t.n));
    return out;
}

} // namespace rota

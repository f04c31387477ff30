#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "rota/graph.hpp"

namespace rota {

struct MatchingResult {
    std::uint32_t size = 0;
    // pair_left[h] = matched right vertex or -1; pair_right[j] symmetric.
    std::vector<std::int32_t> pair_left;
    std::vector<std::int32_t> pair_right;
    // When the matching is not left-perfect: a Hall violator Z (left side),
    // |N(Z)| < |Z|, extracted from the final alternating-reachability layers.
    std::vector<std::uint32_t> deficient_left;
    std::vector<std::uint32_t> deficient_nbhd;
};

// Hopcroft-Karp maximum matching.  Phases of BFS layering plus layered DFS
// augmentation; O(E * sqrt(V)).
inline MatchingResult max_matching(const IndependenceGraph& g) {
    const std::uint32_t L = g.m_left, R = g.m_right;
    const std::uint32_t INF = std::numeric_limits<std::uint32_t>::max();
    MatchingResult res;
    res.pair_left.assign(L, -1);
    res.pair_right.assign(R, -1);

    std::vector<std::uint32_t> dist(L, 0);
    std::vector<std::uint32_t> bfs_queue;
    bfs_queue.reserve(L);

    auto bfs = [&]() -> bool {
        bfs_queue.clear();
        for (std::uint32_t h = 0; h < L; ++h) {
            if (res.pair_left[h] < 0) {
                dist[h] = 0;
                bfs_queue.push_back(h);
            } else {
                dist[h] = INF;
            }
        }
        bool reached_free = false;
        for (std::size_t head = 0; head < bfs_queue.size(); ++head) {
            std::uint32_t h = bfs_queue[head];
            for (std::uint32_t j = 0; j < R; ++j) {
                if (!g.edge(h, j))
                    continue;
                std::int32_t h2 = res.pair_right[j];
                if (h2 < 0) {
                    reached_free = true;
                } else if (dist[static_cast<std::uint32_t>(h2)] == INF) {
                    dist[static_cast<std::uint32_t>(h2)] = dist[h] + 1;
                    bfs_queue.push_back(static_cast<std::uint32_t>(h2));
                }
            }
        }
        return reached_free;
    };

    auto dfs = [&](auto&& self, std::uint32_t h) -> bool {
        for (std::uint32_t j = 0; j < R; ++j) {
            if (!g.edge(h, j))
                continue;
            std::int32_t h2 = res.pair_right[j];
            if (h2 < 0 || (dist[static_cast<std::uint32_t>(h2)] == dist[h] + 1 &&
                           self(self, static_cast<std::uint32_t>(h2)))) {
                res.pair_left[h] = static_cast<std::int32_t>(j);
                res.pair_right[j] = static_cast<std::int32_t>(h);
                return true;
            }
        }
        dist[h] = INF; // dead end for this phase
        return false;
    };

    while (bfs()) {
        for (std::uint32_t h = 0; h < L; ++h)
            if (res.pair_left[h] < 0 && dfs(dfs, h))
                ++res.size;
    }

    if (res.size < L) {
        // Final BFS found no augmenting path, so the set Z of left vertices
        // reachable by alternating paths from free left vertices satisfies
        // N(Z) = {matched partners' right vertices} and |N(Z)| = |Z| - #free,
        // a Hall violator.  dist[] already marks reachability.
        std::vector<bool> nb(R, false);
        for (std::uint32_t h = 0; h < L; ++h) {
            if (dist[h] == INF)
                continue;
            res.deficient_left.push_back(h);
            for (std::uint32_t j = 0; j < R; ++j)
                if (g.edge(h, j))
                    nb[j] = true;
        }
        for (std::uint32_t j = 0; j < R; ++j)
            if (nb[j])
                res.deficient_nbhd.push_back(j);
    }
    return res;
}

} // namespace rota

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "rota/errors.hpp"

namespace rota {

// Bipartite adjacency, one bit per (left, right) pair.
struct IndependenceGraph {
    std::uint32_t m_left = 0;
    std::uint32_t m_right = 0;
    std::uint32_t words = 0; // per left row
    std::vector<std::uint64_t> bits;

    IndependenceGraph() = default;
    IndependenceGraph(std::uint32_t l, std::uint32_t r)
        : m_left(l), m_right(r), words((r + 63) / 64), bits(std::size_t(l) * words, 0) {}

    bool edge(std::uint32_t h, std::uint32_t j) const {
        return (bits[std::size_t(h) * words + (j >> 6)] >> (j & 63)) & 1;
    }
    void set_edge(std::uint32_t h, std::uint32_t j) {
        bits[std::size_t(h) * words + (j >> 6)] |= std::uint64_t(1) << (j & 63);
    }
    std::uint32_t left_degree(std::uint32_t h) const {
        std::uint32_t d = 0;
        for (std::uint32_t w = 0; w < words; ++w)
            d += std::popcount(bits[std::size_t(h) * words + w]);
        return d;
    }
};

struct DegreeStats {
    std::uint32_t min_left = 0;
    std::uint32_t min_right = 0;
    double density = 0.0;
    std::vector<std::uint32_t> left_degrees;
    std::vector<std::uint32_t> right_degrees;
};

inline DegreeStats degree_stats(const IndependenceGraph& g) {
    DegreeStats s;
    s.left_degrees.assign(g.m_left, 0);
    s.right_degrees.assign(g.m_right, 0);
    std::uint64_t edges = 0;
    for (std::uint32_t h = 0; h < g.m_left; ++h) {
        std::uint32_t d = g.left_degree(h);
        s.left_degrees[h] = d;
        edges += d;
        for (std::uint32_t j = 0; j < g.m_right; ++j)
            if (g.edge(h, j))
                ++s.right_degrees[j];
    }
    s.min_left = g.m_left ? *std::min_element(s.left_degrees.begin(), s.left_degrees.end())
                          : 0;
    s.min_right = g.m_right
                      ? *std::min_element(s.right_degrees.begin(), s.right_degrees.end())
                      : 0;
    s.density = (g.m_left && g.m_right)
                    ? static_cast<double>(edges) /
                          (static_cast<double>(g.m_left) * g.m_right)
                    : 0.0;
    return s;
}

} // namespace rota

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rota/echelon.hpp"
#include "rota/gf2.hpp"
#include "rota/modp.hpp"
#include "rota/oracle.hpp"
#include "rota/sample.hpp"
#include "rota/serial.hpp"
#include "rota/zz.hpp"

#include <map>
#include <set>

#include "test_util.hpp"

using namespace rota;

namespace {

template <class Ops>
std::vector<std::int64_t> ints_of(const Ops& ops, const typename Ops::Vec& v) {
    std::vector<std::int64_t> out(ops.dim(v));
    for (std::uint32_t i = 0; i < ops.dim(v); ++i)
        out[i] = ops.coord(v, i);
    return out;
}

template <class Ops>
std::string tuple_key(const Ops& ops, const std::vector<typename Ops::Vec>& tuple) {
    std::string s;
    for (const auto& v : tuple)
        s += testutil::key_of(ints_of(ops, v)) + "|";
    return s;
}

} // namespace

TEST_CASE("t_enumerate sizes on the small fixtures") {
    ModOps g5(5);
    auto ts = t_enumerate(g5, TSpec::entry_set(2, {0, 1}));
    CHECK(ts.vecs.size() == 4);

    ZZOps zz;
    auto tg = t_enumerate(zz, TSpec::graphic(4));
    CHECK(tg.vecs.size() == 6);

    Gf2Ops g2;
    auto tf = t_enumerate(g2, TSpec::full_space(3));
    CHECK(tf.vecs.size() == 8);
    std::set<std::string> dedup;
    for (const auto& v : tf.vecs)
        dedup.insert(testutil::key_of(ints_of(g2, v)));
    CHECK(dedup.size() == 8);
}

TEST_CASE("t_enumerate refuses oversized supports") {
    ModOps g3(3);
    CHECK_THROWS_AS(t_enumerate(g3, TSpec::entry_set(30, {0, 1, 2}), 1 << 10), TooLarge);
}

TEST_CASE("sample_vector is uniform on small supports") {
    // Full space GF(2)^2: 4 cells.
    {
        Gf2Ops ops;
        RngStream rng(11);
        TSpec t = TSpec::full_space(2);
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < 40000; ++i)
            ++counts[testutil::key_of(ints_of(ops, sample_vector(ops, t, rng)))];
        REQUIRE(counts.size() == 4);
        std::vector<std::uint64_t> c;
        for (auto& [k, v] : counts)
            c.push_back(v);
        CHECK(testutil::chi_square_uniform_ok(c));
    }
    // Entry set S={0,1} in GF(5), n=1: 2 cells, each 1/2.
    {
        ModOps ops(5);
        RngStream rng(12);
        TSpec t = TSpec::entry_set(1, {0, 1});
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < 20000; ++i)
            ++counts[testutil::key_of(ints_of(ops, sample_vector(ops, t, rng)))];
        REQUIRE(counts.size() == 2);
        std::vector<std::uint64_t> c;
        for (auto& [k, v] : counts)
            c.push_back(v);
        CHECK(testutil::chi_square_uniform_ok(c));
    }
    // Graphic v=3: the 3 vectors e_i - e_j.
    {
        ZZOps ops;
        RngStream rng(13);
        TSpec t = TSpec::graphic(3);
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < 30000; ++i)
            ++counts[testutil::key_of(ints_of(ops, sample_vector(ops, t, rng)))];
        REQUIRE(counts.size() == 3);
        std::vector<std::uint64_t> c;
        for (auto& [k, v] : counts)
            c.push_back(v);
        CHECK(testutil::chi_square_uniform_ok(c));
    }
}

TEST_CASE("basis tuples are uniform over the enumerated support") {
    // GF(2)^2 full space: exactly 6 ordered bases out of 16 ordered pairs.
    {
        Gf2Ops ops;
        TSpec t = TSpec::full_space(2);
        auto support = enumerate_ordered_bases(ops, t);
        REQUIRE(support.size() == 6);
        std::map<std::string, std::uint64_t> counts;
        for (const auto& tup : support)
            counts[tuple_key(ops, tup)] = 0;
        RngStream rng(21);
        for (int i = 0; i < 60000; ++i) {
            auto tup = sample_basis_tuple(ops, t, rng);
            auto it = counts.find(tuple_key(ops, tup));
            REQUIRE(it != counts.end()); // every draw lies in the support
            ++it->second;
        }
        std::vector<std::uint64_t> c;
        for (auto& [k, v] : counts)
            c.push_back(v);
        CHECK(testutil::chi_square_uniform_ok(c));
    }
    // S={0,1} over GF(5), n=2: 3 nonzero {0,1}-vectors, 6 ordered pairs.
    {
        ModOps ops(5);
        TSpec t = TSpec::entry_set(2, {0, 1});
        auto support = enumerate_ordered_bases(ops, t);
        REQUIRE(support.size() == 6);
        std::map<std::string, std::uint64_t> counts;
        for (const auto& tup : support)
            counts[tuple_key(ops, tup)] = 0;
        RngStream rng(22);
        for (int i = 0; i < 60000; ++i) {
            auto tup = sample_basis_tuple(ops, t, rng);
            auto it = counts.find(tuple_key(ops, tup));
            REQUIRE(it != counts.end());
            ++it->second;
        }
        std::vector<std::uint64_t> c;
        for (auto& [k, v] : counts)
            c.push_back(v);
        CHECK(testutil::chi_square_uniform_ok(c));
    }
}

TEST_CASE("graphic v=2 yields the single spanning tree tuple") {
    ZZOps ops;
    RngStream rng(30);
    auto tup = sample_basis_tuple(ops, TSpec::graphic(2), rng);
    REQUIRE(tup.size() == 1);
    CHECK(ints_of(ops, tup[0]) == std::vector<std::int64_t>{1, -1});
}

TEST_CASE("wilson trees are uniform and acyclic") {
    // K3: 3 spanning trees (Cayley 3^1).
    {
        RngStream rng(41);
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < 30000; ++i) {
            auto edges = wilson_tree(3, rng);
            REQUIRE(edges.size() == 2);
            std::sort(edges.begin(), edges.end());
            std::string k;
            testutil::UnionFind uf(3);
            for (auto [a, b] : edges) {
                CHECK(uf.unite(a, b));
                k += std::to_string(a) + "-" + std::to_string(b) + ";";
            }
            ++counts[k];
        }
        REQUIRE(counts.size() == 3);
        std::vector<std::uint64_t> c;
        for (auto& [k, v] : counts)
            c.push_back(v);
        CHECK(testutil::chi_square_uniform_ok(c));
    }
    // K4: 16 spanning trees (Cayley 4^2), cross-checked by exhaustive
    // enumeration of acyclic 3-subsets of the 6 edges.
    {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> all_edges;
        for (std::uint32_t a = 0; a < 4; ++a)
            for (std::uint32_t b = a + 1; b < 4; ++b)
                all_edges.emplace_back(a, b);
        std::set<std::string> trees;
        for (std::uint32_t x = 0; x < 6; ++x)
            for (std::uint32_t y = x + 1; y < 6; ++y)
                for (std::uint32_t z = y + 1; z < 6; ++z) {
                    testutil::UnionFind uf(4);
                    bool acyclic = uf.unite(all_edges[x].first, all_edges[x].second) &&
                                   uf.unite(all_edges[y].first, all_edges[y].second) &&
                                   uf.unite(all_edges[z].first, all_edges[z].second);
                    if (acyclic)
                        trees.insert(std::to_string(x) + "," + std::to_string(y) + "," +
                                     std::to_string(z));
                }
        REQUIRE(trees.size() == 16);

        RngStream rng(42);
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < 160000; ++i) {
            auto edges = wilson_tree(4, rng);
            REQUIRE(edges.size() == 3);
            std::sort(edges.begin(), edges.end());
            std::string k;
            for (auto [a, b] : edges)
                k += std::to_string(a) + "-" + std::to_string(b) + ";";
            ++counts[k];
        }
        REQUIRE(counts.size() == 16);
        std::vector<std::uint64_t> c;
        for (auto& [k, v] : counts)
            c.push_back(v);
        CHECK(testutil::chi_square_uniform_ok(c));
    }
    // Degenerate sizes.
    {
        RngStream rng(43);
        CHECK(wilson_tree(1, rng).empty());
        auto e = wilson_tree(2, rng);
        REQUIRE(e.size() == 1);
        CHECK(e[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});
    }
}

TEST_CASE("sample_family shapes, ranks and determinism") {
    // n=1 over GF(2): the only basis is ((1)).
    {
        Gf2Ops ops;
        auto fam = sample_family(ops, TSpec::full_space(1), 1, 99);
        REQUIRE(fam.rows.size() == 1);
        REQUIRE(fam.rows[0].size() == 1);
        CHECK(ints_of(ops, fam.rows[0][0]) == std::vector<std::int64_t>{1});
    }
    // n=8, seed 42: every row has rank 8 by the naive oracle.
    {
        Gf2Ops ops;
        auto fam = sample_family(ops, TSpec::full_space(8), 8, 42);
        REQUIRE(fam.rows.size() == 8);
        for (const auto& row : fam.rows) {
            testutil::IntMat m;
            for (const auto& v : row)
                m.push_back(ints_of(ops, v));
            CHECK(testutil::naive_rank_mod(2, m) == 8);
        }
    }
    // Graphic v=4: rows are permuted spanning trees; union-find agrees.
    {
        ZZOps ops;
        auto fam = sample_family(ops, TSpec::graphic(4), 3, 7);
        REQUIRE(fam.rows.size() == 3);
        for (const auto& row : fam.rows) {
            testutil::UnionFind uf(4);
            for (const auto& v : row) {
                auto xs = ints_of(ops, v);
                std::uint32_t a = 4, b = 4;
                for (std::uint32_t i = 0; i < 4; ++i) {
                    if (xs[i] == 1)
                        a = i;
                    if (xs[i] == -1)
                        b = i;
                }
                REQUIRE(a < 4);
                REQUIRE(b < 4);
                CHECK(uf.unite(a, b)); // acyclic, hence spanning at v-1 edges
            }
        }
    }
    // Wrong count is rejected.
    {
        Gf2Ops ops;
        CHECK_THROWS_AS(sample_family(ops, TSpec::full_space(4), 3, 0), Error);
    }
    // Determinism: identical (TSpec, seed) => identical serialized bytes.
    {
        ModOps ops(5);
        auto a = sample_family(ops, TSpec::entry_set(5, {0, 1}), 5, 1234);
        auto b = sample_family(ops, TSpec::entry_set(5, {0, 1}), 5, 1234);
        CHECK(json_dump(family_to_json(ops, a)) == json_dump(family_to_json(ops, b)));
        auto c = sample_family(ops, TSpec::entry_set(5, {0, 1}), 5, 1235);
        CHECK(json_dump(family_to_json(ops, a)) != json_dump(family_to_json(ops, c)));
    }
}

TEST_CASE("acceptance rate of independent {0,1} tuples meets the c' bound") {
    // P(n iid uniform T-vectors are independent) >= c'(1/2) ~ 0.2888 when
    // T = {0,1}^n over GF(2).  Measured with slack for statistical noise.
    Gf2Ops ops;
    for (std::uint32_t n : {8u, 16u, 32u}) {
        TSpec t = TSpec::full_space(n); // {0,1}^n IS GF(2)^n
        RngStream rng(n);
        const int draws = 4000;
        int independent = 0;
        for (int i = 0; i < draws; ++i) {
            EchelonBasisT<Gf2Ops> e(ops, n);
            bool ok = true;
            for (std::uint32_t j = 0; j < n && ok; ++j)
                ok = e.extend_in_place(sample_vector(ops, t, rng));
            independent += ok ? 1 : 0;
        }
        double rate = static_cast<double>(independent) / draws;
        // c' ~ 0.2888; allow 4 sigma of binomial noise (~0.0072 each).
        CHECK(rate > 0.2888 - 0.029);
    }
}

TEST_CASE("tspec validation rejects degenerate specs") {
    ModOps g5(5);
    CHECK_THROWS_AS(tspec_validate(g5, TSpec::entry_set(2, {1})), InvalidTSpec);
    CHECK_THROWS_AS(tspec_validate(g5, TSpec::entry_set(2, {1, 6})), InvalidTSpec);
    CHECK_THROWS_AS(tspec_validate(g5, TSpec::explicit_set(2, {{1, 0}, {2, 0}})),
                    InvalidTSpec);
    CHECK_NOTHROW(tspec_validate(g5, TSpec::explicit_set(2, {{1, 0}, {2, 0}}), false));
    CHECK_THROWS_AS(tspec_validate(g5, TSpec::explicit_set(2, {{1, 0}, {1, 0}, {0, 1}})),
                    InvalidTSpec);
    Gf2Ops g2;
    CHECK_THROWS_AS(tspec_validate(g2, TSpec::full_space(0)), InvalidTSpec);
    ZZOps zz;
    CHECK_THROWS_AS(tspec_validate(zz, TSpec::graphic(1)), InvalidTSpec);
    CHECK_NOTHROW(tspec_validate(zz, TSpec::graphic(2)));
}

TEST_CASE("rejection sampler gives up loudly on a tight budget") {
    // T = the 3 nonzero vectors of GF(2)^2; a 2-tuple of iid draws is
    // dependent with probability 1/3, so a budget of 1 attempt fails fast
    // for some seed among the first few.
    Gf2Ops ops;
    TSpec t = TSpec::explicit_set(2, {{1, 0}, {0, 1}, {1, 1}});
    bool threw = false;
    for (std::uint64_t seed = 0; seed < 64 && !threw; ++seed) {
        try {
            (void)sample_family(ops, t, 2, seed, RejectionBudget{1});
        } catch (const RejectionBudgetExceeded& e) {
            threw = true;
            CHECK(e.attempts == 1);
        }
    }
    CHECK(threw);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rota/sample.hpp"
#include "rota/serial.hpp"

using namespace rota;

namespace {

template <class Ops>
void check_family_equal(const Ops& ops, const BasisFamilyT<Ops>& a,
                        const BasisFamilyT<Ops>& b) {
    REQUIRE(a.n == b.n);
    REQUIRE(a.r == b.r);
    CHECK(a.seed == b.seed);
    for (std::uint32_t i = 0; i < a.r; ++i)
        for (std::uint32_t j = 0; j < a.r; ++j)
            CHECK(ops.equal(a.rows[i][j], b.rows[i][j]));
}

} // namespace

TEST_CASE("field specs round-trip and reject junk") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 65537ull}) {
        FieldSpec in = field_make(FieldSpec::prime(p));
        FieldSpec out = field_from_json(field_to_json(in));
        CHECK(out.mode == FieldMode::Prime);
        CHECK(out.p == p);
    }
    FieldSpec zz = field_from_json(field_to_json(FieldSpec::exact_integer()));
    CHECK(zz.mode == FieldMode::ExactInteger);

    CHECK_THROWS_AS(field_from_json(parse_json("{}")), SerializationError);
    CHECK_THROWS_AS(field_from_json(parse_json("{\"mode\": \"float\"}")),
                    SerializationError);
    CHECK_THROWS_AS(field_from_json(parse_json("{\"mode\": 3}")), SerializationError);
    CHECK_THROWS_AS(field_from_json(parse_json("{\"mode\": \"prime\"}")),
                    SerializationError);
    // Non-prime p rejected by the field gate during load.
    CHECK_THROWS_AS(field_from_json(parse_json("{\"mode\": \"prime\", \"p\": 6}")),
                    Error);
}

TEST_CASE("tspecs round-trip in all four kinds") {
    std::vector<TSpec> specs = {
        TSpec::full_space(7),
        TSpec::entry_set(3, {0, 1, 4}),
        TSpec::explicit_set(2, {{1, 0}, {0, 1}, {1, 1}}),
        TSpec::graphic(5),
    };
    for (const TSpec& t : specs) {
        TSpec back = tspec_from_json(tspec_to_json(t));
        CHECK(back.kind == t.kind);
        CHECK(back.n == t.n);
        CHECK(back.entries == t.entries);
        CHECK(back.vectors == t.vectors);
    }
    CHECK_THROWS_AS(tspec_from_json(parse_json("{\"kind\": \"fancy\", \"n\": 2}")),
                    SerializationError);
    CHECK_THROWS_AS(tspec_from_json(parse_json("{\"kind\": \"full-space\"}")),
                    SerializationError);
    CHECK_THROWS_AS(tspec_from_json(parse_json("{\"kind\": \"entry-set\", \"n\": 2}")),
                    SerializationError);
}

TEST_CASE("hex rows encode four coordinates per digit, low bit first") {
    Gf2Ops ops;
    Gf2Vec v = detail::vec_from_ints(ops, {1, 0, 0, 0, 0, 1, 1, 0});
    CHECK(gf2_row_hex(v) == "16");
    Gf2Vec back = gf2_row_from_hex(8, "16");
    CHECK(ops.equal(v, back));

    // Round-trip random vectors, including non-multiple-of-4 lengths.
    RngStream rng(3);
    for (std::uint32_t n : {1u, 5u, 8u, 13u, 64u, 65u, 130u}) {
        for (int rep = 0; rep < 20; ++rep) {
            Gf2Vec w(n);
            for (std::uint32_t i = 0; i < n; ++i)
                w.set(i, rng.next_below(2) == 1);
            std::string hex = gf2_row_hex(w);
            CHECK(hex.size() == (n + 3) / 4);
            CHECK(ops.equal(w, gf2_row_from_hex(n, hex)));
        }
    }
    CHECK_THROWS_AS(gf2_row_from_hex(8, "1"), SerializationError);
    CHECK_THROWS_AS(gf2_row_from_hex(8, "1X"), SerializationError);
    CHECK_THROWS_AS(gf2_row_from_hex(8, "1G"), SerializationError);
}

TEST_CASE("families round-trip bit-exactly across backends") {
    // GF(2): rows and rows_hex must agree, and the dump must be stable.
    {
        Gf2Ops ops;
        auto fam = sample_family(ops, TSpec::full_space(8), 8, 42);
        Json j = family_to_json(ops, fam);
        REQUIRE(j.contains("rows_hex"));
        for (std::uint32_t i = 0; i < 8; ++i)
            for (std::uint32_t k = 0; k < 8; ++k) {
                std::string hex = j["rows_hex"][i][k].get<std::string>();
                CHECK(ops.equal(gf2_row_from_hex(8, hex), fam.rows[i][k]));
            }
        std::string text = json_dump(j);
        FamilyVariant v = family_from_json(parse_json(text));
        REQUIRE(std::holds_alternative<BasisFamilyT<Gf2Ops>>(v));
        const auto& back = std::get<BasisFamilyT<Gf2Ops>>(v);
        check_family_equal(ops, fam, back);
        CHECK(json_dump(family_to_json(ops, back)) == text);
    }
    // GF(5) entry-set.
    {
        ModOps ops(5);
        auto fam = sample_family(ops, TSpec::entry_set(4, {0, 1}), 4, 7);
        std::string text = json_dump(family_to_json(ops, fam));
        FamilyVariant v = family_from_json(parse_json(text));
        REQUIRE(std::holds_alternative<BasisFamilyT<ModOps>>(v));
        const auto& back = std::get<BasisFamilyT<ModOps>>(v);
        check_family_equal(ops, fam, back);
        CHECK(json_dump(family_to_json(ops, back)) == text);
    }
    // Exact-integer graphic family.
    {
        ZZOps ops;
        auto fam = sample_family(ops, TSpec::graphic(5), 4, 11);
        std::string text = json_dump(family_to_json(ops, fam));
        FamilyVariant v = family_from_json(parse_json(text));
        REQUIRE(std::holds_alternative<BasisFamilyT<ZZOps>>(v));
        const auto& back = std::get<BasisFamilyT<ZZOps>>(v);
        check_family_equal(ops, fam, back);
        CHECK(json_dump(family_to_json(ops, back)) == text);
    }
}

TEST_CASE("family loading validates structure") {
    Gf2Ops ops;
    auto fam = sample_family(ops, TSpec::full_space(3), 3, 1);
    Json good = family_to_json(ops, fam);

    Json j = good;
    j["n"] = 4; // disagrees with tspec.n
    CHECK_THROWS_AS(family_from_json(j), SerializationError);

    j = good;
    j["rows"].erase(2); // short a row
    CHECK_THROWS_AS(family_from_json(j), SerializationError);

    j = good;
    j["rows"][0].erase(2); // a row short a vector
    CHECK_THROWS_AS(family_from_json(j), SerializationError);

    j = good;
    j["rows"][0][0] = Json::array({1, 0}); // wrong vector length
    CHECK_THROWS_AS(family_from_json(j), SerializationError);

    j = good;
    j.erase("seed");
    CHECK_THROWS_AS(family_from_json(j), SerializationError);

    j = good;
    j["rows"][0][0][0] = "one"; // non-integer coordinate
    CHECK_THROWS_AS(family_from_json(j), SerializationError);
}

TEST_CASE("decompositions round-trip with 1-based indices on disk") {
    Decomposition d;
    d.r = 2;
    d.classes = {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}};
    Json j = decomposition_to_json(d);
    CHECK(j["classes"][0][0][0] == 1);
    CHECK(j["classes"][0][0][1] == 1);
    CHECK(j["classes"][1][0][1] == 2);

    Decomposition back = decomposition_from_json(j);
    CHECK(back.r == 2);
    CHECK(back.classes == d.classes);

    // Index 0 and index > r are both rejected.
    CHECK_THROWS_AS(
        decomposition_from_json(parse_json("{\"classes\": [[[0, 1]], [[1, 1]]]}")),
        SerializationError);
    CHECK_THROWS_AS(
        decomposition_from_json(parse_json("{\"classes\": [[[1, 3]], [[1, 1]]]}")),
        SerializationError);
    CHECK_THROWS_AS(decomposition_from_json(parse_json("{\"classes\": [[[1]], [[1, 1]]]}")),
                    SerializationError);
    CHECK_THROWS_AS(decomposition_from_json(parse_json("{}")), SerializationError);
}

TEST_CASE("diagnostics serialize with 1-based deficiency certificates") {
    Gf2Ops ops;
    // Identity family at n=4 fails deterministically with a full certificate.
    BasisFamilyT<Gf2Ops> fam;
    fam.field = ops.field();
    fam.tspec = TSpec::full_space(4);
    fam.n = 4;
    fam.r = 4;
    for (std::uint32_t i = 0; i < 4; ++i) {
        std::vector<Gf2Vec> row;
        for (std::uint32_t j = 0; j < 4; ++j) {
            std::vector<std::int64_t> e(4, 0);
            e[j] = 1;
            row.push_back(detail::vec_from_ints(ops, e));
        }
        fam.rows.push_back(std::move(row));
    }
    DecomposeOptions opt;
    opt.retries = 0;
    auto res = decompose(ops, fam, opt);
    REQUIRE(!res.success);
    Json j = diagnostics_to_json(res.diag);
    CHECK(j["attempts"] == 1);
    CHECK(j["first_attempt_success"] == false);
    CHECK(j["matching_size"] == 0);
    CHECK(j["failure_stage"] == "full-graph");
    CHECK(j["min_left_degree"] == 0);
    CHECK(j["left_degrees"].size() == 4);
    CHECK(j["deficient_left"].size() == 4);
    for (const Json& x : j["deficient_left"])
        CHECK(x.get<int>() >= 1); // 1-based like decomposition indices
    CHECK(j["deficient_nbhd"].empty());
}

TEST_CASE("constants reports render certified decimal endpoints") {
    ConstantsReport rep = constants_report(Rat(1, 2), Rat(1, 1000000), 3);
    Json j = constants_report_to_json(rep, 12);
    CHECK(j["c"] == "1/2");
    CHECK(j["L"] == rep.L);
    CHECK(j["K"] == rep.K);
    CHECK(j["n0"] == rep.n0);
    CHECK(j["alpha"].size() == 3);
    CHECK(j["note"].is_string());

    // Decimal endpoints round outward: parsing them back must bracket the
    // exact interval.
    Rat lo = parse_rational(j["c_prime"]["lo"].get<std::string>());
    Rat hi = parse_rational(j["c_prime"]["hi"].get<std::string>());
    CHECK(lo <= rep.c_prime.lo);
    CHECK(hi >= rep.c_prime.hi);
    CHECK(hi - lo <= rep.c_prime.width() + Rat(2, 1000000000000ull));
    Rat dlo = parse_rational(j["delta"]["lo"].get<std::string>());
    Rat dhi = parse_rational(j["delta"]["hi"].get<std::string>());
    CHECK(dlo <= rep.delta.lo);
    CHECK(dhi >= rep.delta.hi);
}

TEST_CASE("dispersedness witnesses serialize their subspace evidence") {
    ModOps ops(5);
    // T = the line {(x, 0)}: the 1-dimensional span catches all 5 points,
    // far above c * |T| at c = 1/2.
    TSpec t = TSpec::explicit_set(2, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    auto tset = t_enumerate(ops, t, 1 << 20, /*require_span=*/false);
    auto w = is_dispersed(ops, tset, Rational(1, 2));
    REQUIRE(w.has_value());
    Json j = witness_to_json(ops, *w);
    CHECK(j["dim"] == 1);
    CHECK(j["hits"] == 5);
    CHECK(parse_rational(j["threshold"].get<std::string>()) == Rational(5, 2));
    CHECK(j["subset"].size() == 1);
    CHECK(j["subset"][0].size() == 2);
    CHECK(j["subset_idx"].size() == 1);
}

TEST_CASE("json dump is canonical and parse rejects junk") {
    Json a;
    a["zeta"] = 1;
    a["alpha"] = 2;
    Json b;
    b["alpha"] = 2;
    b["zeta"] = 1;
    CHECK(json_dump(a) == json_dump(b));
    CHECK(json_dump(a).back() == '\n');
    CHECK(json_dump(a) == json_dump(parse_json(json_dump(a))));

    CHECK_THROWS_AS(parse_json("{"), SerializationError);
    CHECK_THROWS_AS(parse_json(""), SerializationError);
    CHECK_THROWS_AS(parse_json("{\"a\": 1,}"), SerializationError);
}

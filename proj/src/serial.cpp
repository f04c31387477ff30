#include "rota/serial.hpp"

#include <utility>

namespace rota {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object())
        throw SerializationError(std::string("expected an object with key '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw SerializationError(std::string("missing key '") + key + "'");
    return *it;
}

std::uint64_t get_u64(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw SerializationError(std::string("key '") + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::uint32_t get_u32(const Json& j, const char* key) {
    std::uint64_t v = get_u64(j, key);
    if (v > 0xffffffffull)
        throw SerializationError(std::string("key '") + key + "' out of range");
    return static_cast<std::uint32_t>(v);
}

std::int64_t as_i64(const Json& v) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw SerializationError("expected an integer scalar");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > 0x7fffffffffffffffull)
        throw SerializationError("integer scalar out of range");
    return v.get<std::int64_t>();
}

std::vector<std::int64_t> int_list(const Json& v) {
    if (!v.is_array())
        throw SerializationError("expected an array of integers");
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const Json& x : v)
        out.push_back(as_i64(x));
    return out;
}

template <class Ops>
std::vector<std::int64_t> row_to_ints(const Ops& ops, const typename Ops::Vec& v) {
    std::vector<std::int64_t> out(ops.dim(v));
    for (std::uint32_t i = 0; i < ops.dim(v); ++i)
        out[i] = ops.coord(v, i);
    return out;
}

template <class Ops> Json family_json_common(const Ops& ops, const BasisFamilyT<Ops>& fam) {
    Json j;
    j["field"] = field_to_json(fam.field);
    j["n"] = fam.n;
    j["seed"] = fam.seed;
    j["tspec"] = tspec_to_json(fam.tspec);
    Json rows = Json::array();
    for (const auto& basis : fam.rows) {
        Json row = Json::array();
        for (const auto& v : basis)
            row.push_back(row_to_ints(ops, v));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

} // namespace

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
        throw SerializationError("malformed JSON");
    return j;
}

std::string json_dump(const Json& j) { return j.dump(2) + "\n"; }

Json field_to_json(const FieldSpec& spec) {
    if (spec.mode == FieldMode::ExactInteger)
        return Json{{"mode", "exact-integer"}};
    return Json{{"mode", "prime"}, {"p", spec.p}};
}

FieldSpec field_from_json(const Json& j) {
    const Json& mode = require(j, "mode");
    if (!mode.is_string())
        throw SerializationError("field mode must be a string");
    std::string m = mode.get<std::string>();
    if (m == "exact-integer")
        return FieldSpec::exact_integer();
    if (m == "prime")
        return field_make(FieldSpec::prime(get_u64(j, "p")));
    throw SerializationError("unknown field mode '" + m + "'");
}

Json tspec_to_json(const TSpec& t) {
    Json j;
    j["n"] = t.n;
    switch (t.kind) {
    case TKind::FullSpace:
        j["kind"] = "full-space";
        break;
    case TKind::EntrySet:
        j["kind"] = "entry-set";
        j["entries"] = t.entries;
        break;
    case TKind::Explicit:
        j["kind"] = "explicit";
        j["vectors"] = t.vectors;
        break;
    case TKind::Graphic:
        j["kind"] = "graphic";
        break;
    }
    return j;
}

TSpec tspec_from_json(const Json& j) {
    const Json& kind = require(j, "kind");
    if (!kind.is_string())
        throw SerializationError("tspec kind must be a string");
    std::string k = kind.get<std::string>();
    std::uint32_t n = get_u32(j, "n");
    if (k == "full-space")
        return TSpec::full_space(n);
    if (k == "entry-set")
        return TSpec::entry_set(n, int_list(require(j, "entries")));
    if (k == "explicit") {
        const Json& vecs = require(j, "vectors");
        if (!vecs.is_array())
            throw SerializationError("tspec vectors must be an array");
        std::vector<std::vector<std::int64_t>> out;
        out.reserve(vecs.size());
        for (const Json& v : vecs)
            out.push_back(int_list(v));
        return TSpec::explicit_set(n, std::move(out));
    }
    if (k == "graphic")
        return TSpec::graphic(n);
    throw SerializationError("unknown tspec kind '" + k + "'");
}

Json family_to_json(const Gf2Ops& ops, const BasisFamilyT<Gf2Ops>& fam) {
    Json j = family_json_common(ops, fam);
    Json hex = Json::array();
    for (const auto& basis : fam.rows) {
        Json row = Json::array();
        for (const auto& v : basis)
            row.push_back(gf2_row_hex(v));
        hex.push_back(std::move(row));
    }
    j["rows_hex"] = std::move(hex);
    return j;
}

Json family_to_json(const ModOps& ops, const BasisFamilyT<ModOps>& fam) {
    return family_json_common(ops, fam);
}

Json family_to_json(const ZZOps& ops, const BasisFamilyT<ZZOps>& fam) {
    return family_json_common(ops, fam);
}

FamilyVariant family_from_json(const Json& j) {
    FieldSpec fs = field_from_json(require(j, "field"));
    TSpec t = tspec_from_json(require(j, "tspec"));
    std::uint32_t n = get_u32(j, "n");
    if (n != t.n)
        throw SerializationError("family dimension disagrees with its tspec");
    std::uint32_t r = tspec_rank(t);
    const Json& rows = require(j, "rows");
    if (!rows.is_array() || rows.size() != r)
        throw SerializationError("family must carry exactly rank-many rows");
    return with_ops(fs, [&](auto ops) -> FamilyVariant {
        using Ops = decltype(ops);
        BasisFamilyT<Ops> fam;
        fam.field = ops.field();
        fam.tspec = t;
        fam.n = n;
        fam.r = r;
        fam.seed = get_u64(j, "seed");
        fam.rows.reserve(r);
        for (const Json& row : rows) {
            if (!row.is_array() || row.size() != r)
                throw SerializationError("each basis row must hold rank-many vectors");
            std::vector<typename Ops::Vec> basis;
            basis.reserve(r);
            for (const Json& v : row) {
                std::vector<std::int64_t> raw = int_list(v);
                if (raw.size() != n)
                    throw SerializationError("vector length disagrees with the dimension");
                basis.push_back(detail::vec_from_ints(ops, raw));
            }
            fam.rows.push_back(std::move(basis));
        }
        return fam;
    });
}

std::string gf2_row_hex(const Gf2Vec& v) {
    static const char* digits = "0123456789abcdef";
    std::vector<unsigned> nib((v.n + 3) / 4, 0);
    for (std::uint32_t i = 0; i < v.n; ++i)
        if (v.get(i))
            nib[i >> 2] |= 1u << (i & 3);
    std::string out(nib.size(), '0');
    for (std::size_t k = 0; k < nib.size(); ++k)
        out[k] = digits[nib[k]];
    return out;
}

Gf2Vec gf2_row_from_hex(std::uint32_t n, const std::string& hex) {
    if (hex.size() != (n + 3) / 4)
        throw SerializationError("hex row length disagrees with the dimension");
    Gf2Vec v(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        char c = hex[i >> 2];
        unsigned nib;
        if (c >= '0' && c <= '9')
            nib = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            nib = static_cast<unsigned>(c - 'a' + 10);
        else
            throw SerializationError("hex row contains a non-hex character");
        if (nib & (1u << (i & 3)))
            v.set(i, true);
    }
    return v;
}

Json decomposition_to_json(const Decomposition& d) {
    Json classes = Json::array();
    for (const auto& cls : d.classes) {
        Json c = Json::array();
        for (const auto& [i, j] : cls)
            c.push_back(Json::array({i + 1, j + 1}));
        classes.push_back(std::move(c));
    }
    return Json{{"classes", std::move(classes)}};
}

Decomposition decomposition_from_json(const Json& j) {
    const Json& classes = require(j, "classes");
    if (!classes.is_array())
        throw SerializationError("classes must be an array");
    Decomposition d;
    d.r = static_cast<std::uint32_t>(classes.size());
    for (const Json& cls : classes) {
        if (!cls.is_array())
            throw SerializationError("each class must be an array of [i, j] pairs");
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (const Json& pr : cls) {
            if (!pr.is_array() || pr.size() != 2)
                throw SerializationError("each class entry must be an [i, j] pair");
            std::int64_t a = as_i64(pr[0]), b = as_i64(pr[1]);
            if (a < 1 || b < 1 || a > d.r || b > d.r)
                throw SerializationError("class entry indices must lie in [1, r]");
            out.emplace_back(static_cast<std::uint32_t>(a - 1),
                             static_cast<std::uint32_t>(b - 1));
        }
        d.classes.push_back(std::move(out));
    }
    return d;
}

Json diagnostics_to_json(const Diagnostics& d) {
    Json j;
    j["attempts"] = d.attempts;
    j["first_attempt_success"] = d.first_attempt_success;
    j["matching_size"] = d.matching_size;
    j["failure_stage"] = failure_stage_name(d.failure_stage);
    j["min_left_degree"] = d.degrees.min_left;
    j["min_right_degree"] = d.degrees.min_right;
    j["density"] = d.degrees.density;
    j["left_degrees"] = d.degrees.left_degrees;
    j["right_degrees"] = d.degrees.right_degrees;
    auto one_based = [](const std::vector<std::uint32_t>& xs) {
        Json a = Json::array();
        for (std::uint32_t x : xs)
            a.push_back(x + 1);
        return a;
    };
    j["deficient_left"] = one_based(d.deficient_left);
    j["deficient_nbhd"] = one_based(d.deficient_nbhd);
    return j;
}

namespace {

Json interval_json(const CertifiedValue& v, unsigned digits) {
    return Json{{"lo", rat_to_decimal(v.lo, digits, /*round_up_dir=*/false)},
                {"hi", rat_to_decimal(v.hi, digits, /*round_up_dir=*/true)}};
}

} // namespace

Json constants_report_to_json(const ConstantsReport& rep, unsigned digits) {
    Json j;
    j["c"] = rep.c.str();
    j["c_prime"] = interval_json(rep.c_prime, digits);
    Json alphas = Json::array();
    for (const auto& a : rep.alpha)
        alphas.push_back(interval_json(a, digits));
    j["alpha"] = std::move(alphas);
    j["delta"] = interval_json(rep.delta, digits);
    j["L"] = rep.L;
    j["K"] = rep.K;
    j["n0"] = rep.n0;
    j["note"] = "L, K and n0 certify the asymptotic success guarantee; "
                "they are not runtime thresholds";
    return j;
}

namespace {

template <class Ops> Json witness_json_common(const Ops& ops, const DispersednessWitness<Ops>& w) {
    Json j;
    j["dim"] = w.dim;
    j["hits"] = w.hits;
    j["threshold"] = w.threshold.str();
    j["subset_idx"] = w.subset_idx;
    Json subset = Json::array();
    for (const auto& v : w.subset)
        subset.push_back(row_to_ints(ops, v));
    j["subset"] = std::move(subset);
    return j;
}

} // namespace

Json witness_to_json(const Gf2Ops& ops, const DispersednessWitness<Gf2Ops>& w) {
    return witness_json_common(ops, w);
}
Json witness_to_json(const ModOps& ops, const DispersednessWitness<ModOps>& w) {
    return witness_json_common(ops, w);
}
Json witness_to_json(const ZZOps& ops, const DispersednessWitness<ZZOps>& w) {
    return witness_json_common(ops, w);
}

} // namespace rota

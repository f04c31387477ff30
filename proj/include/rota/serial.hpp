#pragma once

// JSON forms for the on-disk artifacts: basis families, decompositions,
// diagnostics, constants reports, and dispersedness witnesses.  Families
// round-trip bit-exactly; loading validates structure, not basis rank.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rota/constants.hpp"
#include "rota/decompose.hpp"
#include "rota/errors.hpp"
#include "rota/gf2.hpp"
#include "rota/modp.hpp"
#include "rota/sample.hpp"
#include "rota/tspec.hpp"
#include "rota/zz.hpp"

namespace rota {

using Json = nlohmann::json;

using FamilyVariant =
    std::variant<BasisFamilyT<Gf2Ops>, BasisFamilyT<ModOps>, BasisFamilyT<ZZOps>>;

// Runs f with the arithmetic backend selected by the field spec.  GF(2)
// gets the bit-packed backend, other primes the generic mod-p one.
template <class F> decltype(auto) with_ops(const FieldSpec& spec, F&& f) {
    if (spec.mode == FieldMode::ExactInteger)
        return f(ZZOps{});
    std::uint64_t p = field_make(spec).p;
    if (p == 2)
        return f(Gf2Ops{});
    return f(ModOps{p});
}

// Rebuild a backend instance of a known type from a field spec.
template <class Ops> Ops ops_for(const FieldSpec& spec);
template <> inline Gf2Ops ops_for<Gf2Ops>(const FieldSpec&) { return {}; }
template <> inline ModOps ops_for<ModOps>(const FieldSpec& spec) {
    return ModOps(field_make(spec).p);
}
template <> inline ZZOps ops_for<ZZOps>(const FieldSpec&) { return {}; }

template <class T> struct family_ops;
template <class O> struct family_ops<BasisFamilyT<O>> { using type = O; };
template <class T> using family_ops_t = typename family_ops<T>::type;

// Parse with a SerializationError instead of a library exception.
Json parse_json(const std::string& text);

// Canonical file form: sorted keys, two-space indent, trailing newline.
std::string json_dump(const Json& j);

Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

Json tspec_to_json(const TSpec& t);
TSpec tspec_from_json(const Json& j);

// {field, n, seed, tspec, rows: [[[int,...],...],...]}; GF(2) families also
// carry rows_hex (one string per vector, 4 coordinates per hex digit,
// lowest-index coordinate in the least significant bit of its digit).
Json family_to_json(const Gf2Ops& ops, const BasisFamilyT<Gf2Ops>& fam);
Json family_to_json(const ModOps& ops, const BasisFamilyT<ModOps>& fam);
Json family_to_json(const ZZOps& ops, const BasisFamilyT<ZZOps>& fam);
FamilyVariant family_from_json(const Json& j);

std::string gf2_row_hex(const Gf2Vec& v);
Gf2Vec gf2_row_from_hex(std::uint32_t n, const std::string& hex);

// {classes: [[[i, j], ...], ...]} with 1-based basis/position indices.
Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

// Indices in the deficient set are 1-based, matching decompositions.
Json diagnostics_to_json(const Diagnostics& d);

// Interval endpoints as decimal strings rounded outward to `digits` places.
Json constants_report_to_json(const ConstantsReport& rep, unsigned digits = 24);

Json witness_to_json(const Gf2Ops& ops, const DispersednessWitness<Gf2Ops>& w);
Json witness_to_json(const ModOps& ops, const DispersednessWitness<ModOps>& w);
Json witness_to_json(const ZZOps& ops, const DispersednessWitness<ZZOps>& w);

} // namespace rota

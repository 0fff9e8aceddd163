#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "dedekind/cocycle.hpp"
#include "dedekind/witten.hpp"
#include "dedekind/zeta.hpp"

// JSON encodings.  Rationals are "p/q" strings on output; integers are also
// accepted on input.  Malformed input raises ValidationError.
namespace dedekind::io {

using json = nlohmann::json;

Rat rat(const json& j);
json to_json(const Rat& q);
json to_json(const BigInt& z);
RatVec rat_vec(const json& j);
RatMat rat_mat(const json& j);  // list of rows
IntMat int_mat(const json& j);

// {"n", "rank", "sigma", "e", "v", "scale"}
DedekindSum sum(const json& j);
json to_json(const DedekindSum& s);
json to_json(const SumValue& v);
// optional "Q": rows of a rational matrix
std::optional<QForm> qform(const json& j);

json to_json(const LatticeTerm& t);
json to_json(const Combination& c);
json to_json(const ReductionStats& s);

// {"nvars", "terms": [{"exp": [...], "coeff": "p/q"}]}
HomPoly hom_poly(const json& j);
json to_json(const HomPoly& p);
// list of matrices, each a list of rows
MatrixTuple matrix_tuple(const json& j);

struct ZetaRequest {
  FieldData data;
  unsigned s = 1;
};
// FieldData plus "f_gen" (W = f_gen * basis_W) and "s".
ZetaRequest zeta_request(const json& j, std::optional<long> f_gen = std::nullopt);
// Builds the field data without validating it, for reports.
FieldData field_data(const json& j, long f_gen);

// {"type": "A", "rank": l} or {"type", "roots", "weyl_order", "heights"?}
RootSystemData root_data(const json& j);
json to_json(const ZetaValue& z);

}  // namespace dedekind::io

// JSON readers and writers for every file format the CLI speaks. Formats are
// small and human-diffable; parse errors surface as BadInput with the
// offending key in the message.
#pragma once

#include "json.hpp"

#include "xr/moebius.hpp"
#include "xr/products.hpp"
#include "xr/rank1.hpp"
#include "xr/spdspace.hpp"

namespace xr {

using json = nlohmann::json;

// {"n":3,"values":[...],"mults":[...]}
json to_json(const TypeVector& t);
TypeVector type_from_json(const json& j);

// {"n":3,"dims":[1,3]}
json to_json(const FaceSignature& f);
FaceSignature face_from_json(const json& j);

// {"n":3,"signature":[1,2,3],"basis":[[col],[col],[col]]}
json to_json(const Flag& f);
Flag flag_from_json(const json& j);

// {"n":2,"mat":[[...],[...]]}
json to_json(const SpdPoint& p);
SpdPoint spd_from_json(const json& j);

// {"x":Flag,"y":Flag,"z":Flag,"w":Flag}
json to_json(const Quadruple& q);
Quadruple quad_from_json(const json& j);

// {"kind":"finite","scalar":v} | {"kind":"finite","vector":[...]} |
// {"kind":"plus_inf"} | {"kind":"minus_inf"}
json to_json(const CrValue& v);

// {"vertices":[...],"edges":[["u","v",len],...],"ends":[["e1","v"],...]}
json to_json(const EndedTree& t);
EndedTree tree_from_json(const json& j);

// {"e1":"f1",...}
std::map<std::string, std::string> end_map_from_json(const json& j);

// {"factors":[{"kind":"spd","n":2}|{"kind":"h2"}|{"kind":"tree","tree":...}
//             |{"kind":"flat","dim":1}],"weights":[...]}
// plus optional "types":[TypeVector|null,...]
ProductSpace product_space_from_json(const json& j);
ProductType product_type_from_json(const ProductSpace& space, const json& j);
// Boundary point: array of per-factor parts, each tagged by kind:
// {"flag":...,"type":...} | {"angle":a} | {"end":"e1"} | {"dir":[...]}
ProductBoundaryPoint product_point_from_json(const ProductSpace& space, const json& j);
ProductQuadruple product_quad_from_json(const ProductSpace& space, const json& j);

json to_json(const CalibrationReport& r);
json to_json(const MoebiusReport& r);
json to_json(const TreeIsometryReport& r);

Matrix matrix_from_json(const json& j);  // [[row],[row],...]
json matrix_to_json(const Matrix& m);

}  // namespace xr

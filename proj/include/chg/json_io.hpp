#pragma once

#include <json.hpp>

#include "chg/paths.hpp"
#include "chg/pentagons.hpp"
#include "chg/triples.hpp"

namespace chg {

using json = nlohmann::json;

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const Vec3& v);
Vec3 vector_from_json(const json& j);

json to_json(const Point& p);
// the sign is recomputed from the representative; a stored sign must agree
Point point_from_json(const json& j);

json gram_to_json(const Gram& G);
Gram gram_from_json(const json& j);

json isometry_to_json(const Mat3& m);
Mat3 isometry_from_json(const json& j);

json cube_root_to_json(int k);
int cube_root_from_json(const json& j);

json to_json(const Triple& T);
Triple triple_from_json(const json& j);

json to_json(const SCoords& c);
SCoords scoords_from_json(const json& j);

json to_json(const BendProgram& prog);
BendProgram program_from_json(const json& j);

json to_json(const Pentagon& P);
Pentagon pentagon_from_json(const json& j);

json to_json(const PathSample& s);
PathSample path_from_json(const json& j);

} // namespace chg

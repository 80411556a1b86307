#pragma once

#include <nlohmann/json.hpp>

#include "advmorph/body.hpp"

namespace advmorph {

// Single-shape JSON form:
//   {"kind": "length", "part_names": [...], "values": [...],
//    "attackable": [...], "mirror_pairs": [[l, r], ...]}
nlohmann::json to_json(const BodyShaped& shape);
BodyShaped body_shape_from_json(const nlohmann::json& j);

nlohmann::json mirror_pairs_to_json(const std::vector<MirrorPair>& pairs);
std::vector<MirrorPair> mirror_pairs_from_json(const nlohmann::json& j);

}  // namespace advmorph

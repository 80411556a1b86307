#include "advmorph/body_io.hpp"

#include <fmt/format.h>

namespace advmorph {

std::string format_percent(const std::optional<double>& percent) {
  if (!percent) return "-";
  return fmt::format("{:+.2f}", percent_of_ratio(*percent / 100.0));
}

std::string to_string(DimensionKind kind) {
  return kind == DimensionKind::Length ? "length" : "thickness";
}

DimensionKind dimension_kind_from_string(const std::string& s) {
  if (s == "length") return DimensionKind::Length;
  if (s == "thickness") return DimensionKind::Thickness;
  throw ConfigError("unknown dimension kind '" + s + "' (expected length|thickness)");
}

nlohmann::json mirror_pairs_to_json(const std::vector<MirrorPair>& pairs) {
  auto out = nlohmann::json::array();
  for (const auto& p : pairs) out.push_back({p.left, p.right});
  return out;
}

std::vector<MirrorPair> mirror_pairs_from_json(const nlohmann::json& j) {
  std::vector<MirrorPair> pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ConfigError("mirror pair must be [left, right]");
    pairs.push_back({p[0].get<Eigen::Index>(), p[1].get<Eigen::Index>()});
  }
  return pairs;
}

nlohmann::json to_json(const BodyShaped& shape) {
  nlohmann::json j;
  j["kind"] = to_string(shape.kind());
  j["part_names"] = shape.part_names();
  j["values"] = std::vector<double>(shape.values().begin(), shape.values().end());
  j["attackable"] = std::vector<bool>(shape.attackable().begin(), shape.attackable().end());
  j["mirror_pairs"] = mirror_pairs_to_json(shape.mirror_pairs());
  return j;
}

BodyShaped body_shape_from_json(const nlohmann::json& j) {
  try {
    const auto names = j.at("part_names").get<std::vector<std::string>>();
    const auto values = j.at("values").get<std::vector<double>>();
    std::vector<bool> mask(values.size(), true);
    if (j.contains("attackable")) mask = j.at("attackable").get<std::vector<bool>>();
    if (mask.size() != values.size())
      throw ConfigError("attackable mask length differs from values");
    Mask attackable(static_cast<Eigen::Index>(mask.size()));
    for (std::size_t i = 0; i < mask.size(); ++i) attackable[static_cast<Eigen::Index>(i)] = mask[i];
    std::vector<MirrorPair> pairs;
    if (j.contains("mirror_pairs")) pairs = mirror_pairs_from_json(j.at("mirror_pairs"));
    return BodyShaped(Eigen::Map<const VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
                      names, std::move(pairs),
                      dimension_kind_from_string(j.at("kind").get<std::string>()),
                      std::move(attackable));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed body shape: ") + e.what());
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace advmorph

#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"

#include <json.hpp>

#include <string>

namespace lamplight::group {

/// C2 -> 0/1, Z -> integer, Z^2 -> [x, y], wreath -> {"position": ..,
/// "lamps": [[point, value], ...]} with lamps in canonical (sorted) order.
nlohmann::json to_json(const Element& e);

/// Inverse of to_json, validated against `spec`; throws SpecMismatch.
Element element_from_json(const GroupSpec& spec, const nlohmann::json& j);

/// Compact JSON text of to_json(e); collision-free outcome key.
std::string canonical_key(const Element& e);

}  // namespace lamplight::group

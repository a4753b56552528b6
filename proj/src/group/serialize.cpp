#include "lamplight/group/serialize.hpp"

#include "lamplight/util/errors.hpp"

namespace lamplight::group {

using nlohmann::json;

json to_json(const Element& e) {
    switch (e.kind()) {
        case Element::Kind::CyclicTwo: return e.on() ? 1 : 0;
        case Element::Kind::IntegerLine: return e.x();
        case Element::Kind::IntegerGrid: return json::array({e.x(), e.y()});
        case Element::Kind::Wreath: break;
    }
    json lamps = json::array();
    for (const auto& entry : e.lamps()) lamps.push_back(json::array({to_json(entry.point), to_json(entry.value)}));
    return json{{"position", to_json(e.position())}, {"lamps", std::move(lamps)}};
}

Element element_from_json(const GroupSpec& spec, const json& j) {
    try {
        switch (spec.kind()) {
            case GroupSpec::Kind::CyclicTwo: {
                const auto v = j.get<std::int64_t>();
                if (v != 0 && v != 1) throw SpecMismatch("C2 value must be 0 or 1");
                return Element::c2(v == 1);
            }
            case GroupSpec::Kind::IntegerLine: return Element::line(j.get<std::int64_t>());
            case GroupSpec::Kind::IntegerGrid:
                if (!j.is_array() || j.size() != 2) throw SpecMismatch("Z2 value must be [x, y]");
                return Element::grid(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
            case GroupSpec::Kind::Wreath: break;
        }
        std::vector<LampEntry> lamps;
        for (const auto& entry : j.at("lamps")) {
            if (!entry.is_array() || entry.size() != 2) throw SpecMismatch("lamp entry must be [point, value]");
            lamps.push_back({element_from_json(spec.base(), entry[0]), element_from_json(spec.lamp(), entry[1])});
        }
        return Element::wreath(std::move(lamps), element_from_json(spec.base(), j.at("position")));
    } catch (const json::exception& ex) {
        throw SpecMismatch(std::string("element json does not match ") + spec.to_string() + ": " + ex.what());
    }
}

std::string canonical_key(const Element& e) { return to_json(e).dump(); }

}  // namespace lamplight::group

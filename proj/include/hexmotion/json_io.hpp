#pragma once

#include "hexmotion/liaison.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <string>

namespace hexmotion {

using json = nlohmann::ordered_json;

// --------------------------------------------------------------------------
// Exact rationals in JSON
// --------------------------------------------------------------------------

/// Rationals travel as strings ("p/q" or "p"); integer literals are accepted
/// on input.  Floating-point literals are rejected outright: a binary double
/// is almost never the rational the user meant, and silent conversion would
/// defeat the exactness contract.
inline Rat rat_from_json(const json& v) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return rat_parse(v.get<std::string>());
    if (v.is_number_float())
        throw std::invalid_argument("rat_from_json: write non-integer values as strings like \"5/3\"");
    throw std::invalid_argument("rat_from_json: expected an integer or a rational string");
}

inline json rat_to_json(const Rat& q) { return json(rat_str(q)); }

// --------------------------------------------------------------------------
// Points, tuples, hexapods
// --------------------------------------------------------------------------

inline Vec3 vec3_from_json(const json& v) {
    if (!v.is_array() || v.size() != 3)
        throw std::invalid_argument("vec3_from_json: expected a coordinate triple");
    return Vec3{rat_from_json(v[0]), rat_from_json(v[1]), rat_from_json(v[2])};
}

inline json vec3_to_json(const Vec3& p) {
    json a = json::array();
    for (const auto& c : p) a.push_back(rat_to_json(c));
    return a;
}

inline SixTuple six_tuple_from_json(const json& v) {
    if (!v.is_array() || v.size() != 6)
        throw std::invalid_argument("six_tuple_from_json: expected six points");
    std::array<Vec3, 6> pts;
    for (size_t i = 0; i < 6; ++i) pts[i] = vec3_from_json(v[i]);
    return six_tuple(pts);
}

inline json six_tuple_to_json(const SixTuple& t) {
    json a = json::array();
    for (int i = 0; i < 6; ++i) a.push_back(vec3_to_json(t[i]));
    return a;
}

/// Parsed form of the input schema: {"base": [[x,y,z] x6], "platform":
/// optional same, "gamma": optional "p/q", "legs_squared": optional
/// ["p/q" x6]}.
struct InputDocument {
    SixTuple base;
    std::optional<SixTuple> platform;
    std::optional<Rat> gamma;
    std::optional<std::array<Rat, 6>> legs_squared;
};

inline InputDocument input_from_json(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("input: top-level JSON object expected");
    if (!doc.contains("base")) throw std::invalid_argument("input: missing field \"base\"");
    InputDocument in{six_tuple_from_json(doc.at("base")), std::nullopt, std::nullopt, std::nullopt};
    if (doc.contains("platform") && !doc.at("platform").is_null())
        in.platform = six_tuple_from_json(doc.at("platform"));
    if (doc.contains("gamma") && !doc.at("gamma").is_null()) in.gamma = rat_from_json(doc.at("gamma"));
    if (doc.contains("legs_squared") && !doc.at("legs_squared").is_null()) {
        const json& legs = doc.at("legs_squared");
        if (!legs.is_array() || legs.size() != 6)
            throw std::invalid_argument("input: \"legs_squared\" must hold six values");
        std::array<Rat, 6> l;
        for (size_t i = 0; i < 6; ++i) l[i] = rat_from_json(legs[i]);
        in.legs_squared = l;
    }
    return in;
}

inline json input_to_json(const InputDocument& in) {
    json doc;
    doc["base"] = six_tuple_to_json(in.base);
    if (in.platform) doc["platform"] = six_tuple_to_json(*in.platform);
    if (in.gamma) doc["gamma"] = rat_to_json(*in.gamma);
    if (in.legs_squared) {
        json legs = json::array();
        for (const auto& l : *in.legs_squared) legs.push_back(rat_to_json(l));
        doc["legs_squared"] = legs;
    }
    return doc;
}

inline json hexapod_to_json(const Hexapod& hex, const Rat& gamma) {
    return input_to_json({hex.base, hex.platform, gamma, hex.leg_sq});
}

}  // namespace hexmotion

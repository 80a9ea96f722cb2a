#pragma once

#include "hexmotion/rational.hpp"
#include "hexmotion/sixtuple.hpp"

#include <array>

namespace hexmotion::fixtures {

/// Base anchor tuple used throughout the worked examples.
inline SixTuple base_tuple() {
    return six_tuple({vec3(Rat(0), Rat(0), Rat(0)), vec3(Rat(2), Rat(0), Rat(0)),
                      vec3(Rat(3), Rat(2), Rat(0)), vec3(Rat(2), Rat(3), Rat(1)),
                      vec3(Rat(1), Rat(2), Rat(2)), vec3(Rat(3), Rat(1), Rat(3))});
}

/// Platform tuple photographically compatible with base_tuple(): the two
/// maps share their image curve, so every direction is matched.
inline SixTuple platform_tuple() {
    return six_tuple({vec3(Rat(0), Rat(0), Rat(0)),
                      vec3(rat_parse("1397624/806205"), rat_parse("-92216/161241"), rat_parse("-437432/806205")),
                      vec3(rat_parse("340244/161241"), rat_parse("82388/53747"), rat_parse("-835486/483723")),
                      vec3(rat_parse("1341708/1236181"), rat_parse("3724594/1236181"), rat_parse("-922514/1236181")),
                      vec3(rat_parse("1125372/2203627"), rat_parse("5582884/2203627"), rat_parse("2416984/2203627")),
                      vec3(rat_parse("1719522/591217"), rat_parse("824050/591217"), rat_parse("1683982/591217"))});
}

/// Affine relations d_{i}^2 = a d_1^2 + b d_2^2 + c d_3^2 + e (i = 4, 5, 6)
/// cutting out the admissible leg-length subspace of the fixture pair.
struct LegRelation {
    Rat a, b, c, e;
    Rat eval(const Rat& d1sq, const Rat& d2sq, const Rat& d3sq) const {
        return a * d1sq + b * d2sq + c * d3sq + e;
    }
};

inline std::array<LegRelation, 3> leg_relations() {
    return {LegRelation{rat_parse("71/92"), rat_parse("-105/92"), rat_parse("63/46"), rat_parse("-535801/676062")},
            LegRelation{rat_parse("71/41"), rat_parse("-75/41"), rat_parse("45/41"), rat_parse("-1908080/1074159")},
            LegRelation{rat_parse("71/44"), rat_parse("-45/44"), rat_parse("9/22"), rat_parse("-114265/154638")}};
}

/// Leg choice on the admissible subspace for which the motion polynomial
/// degenerates further (the extra-special instance of the worked example).
inline std::array<Rat, 3> special_leg_squares() {
    return {rat_parse("62434791769/2888740009"), rat_parse("147143743/8595735"),
            rat_parse("431695696/46416969")};
}

/// Full six-vector of squared leg lengths on the admissible subspace.
inline std::array<Rat, 6> legs_on_subspace(const Rat& d1sq, const Rat& d2sq, const Rat& d3sq) {
    auto rel = leg_relations();
    return {d1sq, d2sq, d3sq, rel[0].eval(d1sq, d2sq, d3sq), rel[1].eval(d1sq, d2sq, d3sq),
            rel[2].eval(d1sq, d2sq, d3sq)};
}

inline std::array<Rat, 6> special_legs() {
    auto s = special_leg_squares();
    return legs_on_subspace(s[0], s[1], s[2]);
}

/// A generic point of the admissible subspace (small integers, kept away
/// from the special choice).
inline std::array<Rat, 6> generic_legs() { return legs_on_subspace(Rat(9), Rat(11), Rat(10)); }

}  // namespace hexmotion::fixtures

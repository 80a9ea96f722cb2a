#include <catch2/catch_amalgamated.hpp>

#include "hexmotion/families.hpp"
#include "hexmotion/study.hpp"

#include <random>

using namespace hexmotion;

namespace {

struct RatGen {
    std::mt19937_64 rng{0x68657870ULL};

    Rat take(int lo, int hi, int den_hi, bool nonzero) {
        std::uniform_int_distribution<int> num(lo, hi), den(1, den_hi);
        while (true) {
            Rat q = rat(num(rng), den(rng));
            if (!nonzero || !is_zero(q)) return q;
        }
    }
    Rat coord() { return take(-6, 6, 3, false); }
    Rat coord_nz() { return take(-6, 6, 3, true); }
    Rat scale_mu() {  // anything except 0 and 1
        while (true) {
            Rat q = take(-4, 4, 2, true);
            if (q != Rat(1)) return q;
        }
    }
    Rat leg() { return take(1, 12, 3, true); }
};

LinesParams random_lines(RatGen& g) {
    return {g.coord_nz(), g.scale_mu(), g.coord(),    g.coord_nz(), g.scale_mu(), g.coord(),
            g.coord(),    g.coord_nz(), g.scale_mu(), g.leg(),      g.leg(),      g.leg()};
}

Order3Params random_order3(RatGen& g) {
    return {g.coord(), g.coord(), g.coord(), g.coord(), g.coord(), g.coord(), g.leg(), g.leg(), g.leg()};
}

}  // namespace

TEST_CASE("concurrent-lines construction", "[families]") {
    LinesParams q{Rat(2), rat(-1, 2), Rat(1), Rat(3), Rat(-2), Rat(-1), Rat(2), Rat(2), rat(3, 2),
                  Rat(5), Rat(7), Rat(6)};
    auto inst = lines_family(q);
    REQUIRE(inst.gamma == Rat(-1));
    REQUIRE(lines_concurrent(inst.hex.base));
    REQUIRE(lines_concurrent(inst.hex.platform));
    REQUIRE(inst.hex.leg_sq[0] == inst.hex.leg_sq[1]);
    REQUIRE(inst.hex.leg_sq[2] == inst.hex.leg_sq[3]);
    REQUIRE(inst.hex.leg_sq[4] == inst.hex.leg_sq[5]);
    // platform is the pairwise swap of the base
    for (int pair = 0; pair < 3; ++pair) {
        REQUIRE(inst.hex.platform[2 * pair] == inst.hex.base[2 * pair + 1]);
        REQUIRE(inst.hex.platform[2 * pair + 1] == inst.hex.base[2 * pair]);
    }

    // a generic tuple does not have concurrent anchor lines
    SixTuple skew = inst.hex.base;
    skew[5] = skew[5] + Vec3{Rat(1), Rat(0), Rat(0)};
    REQUIRE_FALSE(lines_concurrent(skew));

    REQUIRE_THROWS_AS(lines_family({Rat(0), Rat(2), Rat(1), Rat(1), Rat(2), Rat(1), Rat(1), Rat(1),
                                    Rat(2), Rat(1), Rat(1), Rat(1)}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(lines_family({Rat(2), Rat(1), Rat(1), Rat(1), Rat(2), Rat(1), Rat(1), Rat(1),
                                    Rat(2), Rat(1), Rat(1), Rat(1)}),
                      std::invalid_argument);
}

TEST_CASE("order-three construction", "[families]") {
    Order3Params q{Rat(1), Rat(2), Rat(-1), Rat(3), rat(1, 2), Rat(-2), Rat(5), Rat(6), rat(11, 2)};
    auto inst = order3_family(q);
    REQUIRE(inst.gamma == Rat(1));

    // base and platform consist of two orbits of the coordinate 3-cycle
    auto cyc = [](const Vec3& v) { return Vec3{v[2], v[0], v[1]}; };
    const SixTuple& P = inst.hex.base;
    REQUIRE(cyc(P[0]) == P[1]);  // sigma: (1,2,3)(4,5,6) on the base labels
    REQUIRE(cyc(P[1]) == P[2]);
    REQUIRE(cyc(P[3]) == P[4]);
    REQUIRE(cyc(P[4]) == P[5]);
    const SixTuple& p = inst.hex.platform;
    REQUIRE(p[0] == P[3]);
    REQUIRE(p[1] == P[5]);
    REQUIRE(p[2] == P[4]);
    REQUIRE(p[3] == P[0]);
    REQUIRE(p[4] == P[2]);
    REQUIRE(p[5] == P[1]);

    // degenerate orbit: a = b = c collapses the invariant k
    REQUIRE_THROWS_AS(order3_family({Rat(1), Rat(1), Rat(1), Rat(3), rat(1, 2), Rat(-2), Rat(1),
                                     Rat(1), Rat(1)}),
                      std::invalid_argument);
    // equal invariants k = K mean a congruent pair
    REQUIRE_THROWS_AS(order3_family({Rat(1), Rat(2), Rat(-1), Rat(-1), Rat(2), Rat(1), Rat(1),
                                     Rat(1), Rat(1)}),
                      std::domain_error);
}

TEST_CASE("congruent orbits annihilate the determinantal quartics", "[families]") {
    // k = K = 7 for these two orbits; with the closed-form legs the entire
    // determinantal system collapses, which is the instance-level shadow of
    // the congruence factor in the symbolic numerator of G_k
    Rat a(1), b(2), c(-1), A(-1), B(2), C(1);
    Rat k = a * a + b * b + c * c - a * b - a * c - b * c;
    Rat K = A * A + B * B + C * C - A * B - A * C - B * C;
    REQUIRE(k == K);
    Rat U = A * a - A * b + B * b - B * c - C * a + C * c;
    Rat V = A * a - A * c - B * a + B * b - C * b + C * c;
    Rat W = A * b - A * c - B * a + B * c + C * a - C * b;
    Rat d1(4), d2(5), d3(6), e2 = d2 - d1, e3 = d3 - d1, kK = k * K;
    std::array<Rat, 6> legs{d1,
                            d2,
                            d3,
                            d1 - (U * W * e2 - V * W * e3) / kK,
                            d1 + (U * V * e2 - U * W * e3) / kK,
                            d1 + (V * W * e2 + U * V * e3) / kK};
    Vec3 p1{a, b, c}, p2{b, c, a}, p3{c, a, b};
    Vec3 q4{A, B, C}, q5{B, C, A}, q6{C, A, B};
    Hexapod hex{six_tuple({q4, q6, q5, p1, p3, p2}), six_tuple({p1, p2, p3, q4, q5, q6}), legs};
    auto elim = eliminate_legs(study_frame(hex, Rat(1)));
    for (const auto& g : elim.G) REQUIRE(g.is_zero());
    REQUIRE(elim.S.is_zero());
    REQUIRE_FALSE(elim.linear_pencil);
}

TEST_CASE("cubic of the symmetric concurrent-lines case splits into planes", "[families]") {
    // both mu's equal to -1 plus an axis-aligned second line and equal legs
    LinesParams q{Rat(2), Rat(-1), Rat(0), Rat(2), Rat(-1), Rat(1), Rat(-2), Rat(3), Rat(2),
                  Rat(5), Rat(5), Rat(7)};
    auto inst = lines_family(q);
    auto elim = eliminate_legs(study_frame(inst.hex, inst.gamma));
    REQUIRE(elim.linear_pencil);
    MPoly e1 = MPoly::var(4, 1), e2 = MPoly::var(4, 2), e3 = MPoly::var(4, 3);
    MPoly planes = (e1 - e2) * (e1 + e2) *
                   (MPoly::constant(4, q.A5) * e1 + MPoly::constant(4, q.B5) * e2 +
                    MPoly::constant(4, q.C5) * e3);
    REQUIRE((elim.S.primitive() - planes.primitive()).is_zero());
}

TEST_CASE("random concurrent-lines instances are movable", "[families][slow]") {
    RatGen gen;
    int done = 0, attempts = 0;
    while (done < 5 && attempts < 40) {
        ++attempts;
        FamilyInstance inst;
        try {
            inst = lines_family(random_lines(gen));
        } catch (const std::invalid_argument&) {
            continue;  // degenerate draw (coincident anchor points)
        }
        auto scales = tang2_solve(inst.hex.base, inst.hex.platform);
        REQUIRE(scales.gammas == std::vector<Rat>{Rat(-1)});
        auto elim = eliminate_legs(study_frame(inst.hex, inst.gamma));
        REQUIRE(elim.linear_pencil);
        REQUIRE(elim.S.total_degree() == 3);
        auto cert = movability_certificate(inst.hex, inst.gamma, 256);
        REQUIRE(cert.movable);
        REQUIRE(cert.total_contact > cert.ambient_degree);
        ++done;
    }
    REQUIRE(done == 5);
}

TEST_CASE("random order-three instances are movable", "[families][slow]") {
    RatGen gen;
    int done = 0, attempts = 0;
    while (done < 5 && attempts < 40) {
        ++attempts;
        FamilyInstance inst;
        try {
            inst = order3_family(random_order3(gen));
        } catch (const std::exception&) {
            continue;  // degenerate draw (collapsed orbit, congruent pair, coincident points)
        }
        auto scales = tang2_solve(inst.hex.base, inst.hex.platform);
        REQUIRE(scales.gammas == std::vector<Rat>{Rat(1)});
        auto elim = eliminate_legs(study_frame(inst.hex, inst.gamma));
        REQUIRE(elim.linear_pencil);
        REQUIRE(elim.S.total_degree() == 3);
        auto cert = movability_certificate(inst.hex, inst.gamma, 256);
        REQUIRE(cert.movable);
        REQUIRE(cert.total_contact > cert.ambient_degree);
        ++done;
    }
    REQUIRE(done == 5);
}

TEST_CASE("mobility survives exact frame changes", "[families][slow]") {
    LinesParams q{Rat(2), rat(-1, 2), Rat(1), Rat(3), Rat(-2), Rat(-1), Rat(2), Rat(2), rat(3, 2),
                  Rat(5), Rat(7), Rat(6)};
    auto inst = lines_family(q);
    auto R1 = rational_rotation({Rat(2), Rat(1), Rat(0), Rat(-1)});
    auto R2 = rational_rotation({Rat(1), Rat(3), Rat(1), Rat(1)});
    // orthogonality of the exact rotation
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat dot(0);
            for (int r = 0; r < 3; ++r) dot += R1[r][i] * R1[r][j];
            REQUIRE(dot == (i == j ? Rat(1) : Rat(0)));
        }
    Hexapod moved{transform_tuple(R1, Vec3{Rat(1), Rat(-2), rat(1, 2)}, inst.hex.base),
                  transform_tuple(R2, Vec3{Rat(-1), Rat(1), Rat(2)}, inst.hex.platform),
                  inst.hex.leg_sq};
    auto scales = tang2_solve(moved.base, moved.platform);
    REQUIRE(scales.gammas == std::vector<Rat>{Rat(-1)});
    auto elim = eliminate_legs(study_frame(moved, inst.gamma));
    REQUIRE(elim.linear_pencil);
    auto cert = movability_certificate(moved, inst.gamma, 256);
    REQUIRE(cert.movable);
}

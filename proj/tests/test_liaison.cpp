#include <catch2/catch_amalgamated.hpp>

#include "hexmotion/fixtures.hpp"
#include "hexmotion/liaison.hpp"

using namespace hexmotion;

TEST_CASE("tuple scaling", "[liaison]") {
    SixTuple t = fixtures::base_tuple();
    SixTuple s = scale_tuple(t, Rat(-3));
    for (int i = 0; i < 6; ++i)
        for (size_t j = 0; j < 3; ++j) REQUIRE(s[i][j] == Rat(-3) * t[i][j]);
    REQUIRE(s.affine_rank() == t.affine_rank());
    REQUIRE_THROWS(scale_tuple(t, Rat(0)));
}

TEST_CASE("verify report of the worked pair", "[liaison][slow]") {
    auto rep = verify_residual_platform(fixtures::base_tuple(), fixtures::platform_tuple(), 256);
    REQUIRE(rep.base_class == "birational-6");
    REQUIRE(rep.platform_class == "birational-6");
    REQUIRE(rep.pencil_dim == 2);
    REQUIRE(rep.platform_on_pencil);
    REQUIRE(rep.node_free);
    REQUIRE(rep.matched_multiplicity == 14);
    REQUIRE(rep.residual_count == 14);
    REQUIRE(rep.pass);
}

TEST_CASE("platform scale recovery at the worked pair", "[liaison][slow]") {
    auto t2 = tang2_solve(fixtures::base_tuple(), fixtures::platform_tuple(), 256);
    REQUIRE(t2.bonds == 14);
    REQUIRE(t2.precision_used == 256);
    REQUIRE(t2.gammas.size() == 1);
    REQUIRE(t2.gammas[0] == Rat(1));
    REQUIRE(t2.residual < pow2(-100, 256));
}

TEST_CASE("scale recovery is inverse to a platform rescale", "[liaison][slow]") {
    SixTuple inflated = scale_tuple(fixtures::platform_tuple(), Rat(5));
    auto t2 = tang2_solve(fixtures::base_tuple(), inflated, 256);
    REQUIRE(t2.gammas.size() == 1);
    REQUIRE(t2.gammas[0] == rat(1, 5));
    REQUIRE(t2.residual < pow2(-100, 256));
}

TEST_CASE("leg subspace of the worked pair", "[liaison][slow]") {
    auto t3 = tang3_solve(fixtures::base_tuple(), fixtures::platform_tuple(), Rat(1), 256);
    REQUIRE(t3.solvable);
    REQUIRE(t3.dim == 3);
    REQUIRE(t3.relations.size() == 3);
    auto expected = fixtures::leg_relations();
    for (size_t k = 0; k < 3; ++k) {
        const auto& rel = t3.relations[k];
        REQUIRE(rel.pivot == static_cast<int>(k) + 3);
        REQUIRE(rel.free_vars == std::vector<int>{0, 1, 2});
        REQUIRE(rel.coef.size() == 3);
        REQUIRE(rel.coef[0] == expected[k].a);
        REQUIRE(rel.coef[1] == expected[k].b);
        REQUIRE(rel.coef[2] == expected[k].c);
        REQUIRE(rel.cst == expected[k].e);
    }
}

TEST_CASE("movability certificate on the leg subspace", "[liaison][slow]") {
    Hexapod hex{fixtures::base_tuple(), fixtures::platform_tuple(), fixtures::special_legs()};
    auto cert = movability_certificate(hex, Rat(1), 256);
    REQUIRE(cert.bond_count == 14);
    REQUIRE(cert.total_contact == 42);
    REQUIRE(cert.total_contact > cert.ambient_degree);
    REQUIRE(cert.movable);
    for (const auto& jet : cert.bonds) {
        REQUIRE(jet.jet_order == 3);
        REQUIRE(jet.residual < pow2(-80, 256));
    }

    Hexapod generic{fixtures::base_tuple(), fixtures::platform_tuple(), fixtures::generic_legs()};
    REQUIRE(movability_certificate(generic, Rat(1), 256).movable);
}

TEST_CASE("certificate rejects legs off the subspace", "[liaison][slow]") {
    auto legs = fixtures::special_legs();
    legs[3] += Rat(1);
    Hexapod hex{fixtures::base_tuple(), fixtures::platform_tuple(), legs};
    auto cert = movability_certificate(hex, Rat(1), 256);
    REQUIRE_FALSE(cert.movable);
    bool some_order_two = false;
    for (const auto& jet : cert.bonds)
        if (jet.jet_order == 2) some_order_two = true;
    REQUIRE(some_order_two);
}

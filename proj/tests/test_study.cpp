#include <catch2/catch_amalgamated.hpp>

#include "hexmotion/fixtures.hpp"
#include "hexmotion/study.hpp"

#include <set>
#include <string>

using namespace hexmotion;

namespace {

Hexapod special_hexapod() {
    return {fixtures::base_tuple(), fixtures::platform_tuple(), fixtures::special_legs()};
}

Hexapod generic_hexapod() {
    return {fixtures::base_tuple(), fixtures::platform_tuple(), fixtures::generic_legs()};
}

// f quaternion realizing translation tau at rotation quaternion e:
// f = (0, tau) * e / 2, which satisfies the coupling condition by construction.
std::array<Rat, 4> f_for(const std::array<Rat, 4>& e, const Vec3& tau) {
    std::array<Rat, 4> f;
    f[0] = -(tau[0] * e[1] + tau[1] * e[2] + tau[2] * e[3]) / 2;
    f[1] = (e[0] * tau[0] + tau[1] * e[3] - tau[2] * e[2]) / 2;
    f[2] = (e[0] * tau[1] + tau[2] * e[1] - tau[0] * e[3]) / 2;
    f[3] = (e[0] * tau[2] + tau[0] * e[2] - tau[1] * e[1]) / 2;
    return f;
}

}  // namespace

TEST_CASE("parameterization realizes rigid placements", "[study]") {
    std::array<Rat, 4> e{Rat(2), Rat(1), Rat(-1), Rat(3)};
    Vec3 tau{rat(1, 2), Rat(-2), Rat(3)};
    auto f = f_for(e, tau);
    std::vector<Rat> x(e.begin(), e.end());
    x.insert(x.end(), f.begin(), f.end());

    Rat N = study_norm().eval(x);
    REQUIRE(N == Rat(15));
    REQUIRE(study_psi().eval(x) == Rat(0));
    for (int j = 0; j < 3; ++j)
        REQUIRE(study_translation()[j].eval(x) == N * tau[j]);

    // the rotation columns are orthogonal with norm N
    const auto& R = study_rotation();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Rat dot(0);
            for (int k = 0; k < 3; ++k) dot += R[k][a].eval(x) * R[k][b].eval(x);
            REQUIRE(dot == (a == b ? N * N : Rat(0)));
        }

    Vec3 p{Rat(1), rat(1, 3), Rat(-2)};
    Vec3 P{Rat(0), Rat(2), Rat(1)};
    Rat dsq = rat(7, 4);
    Rat want(0);
    for (int j = 0; j < 3; ++j) {
        Rat comp = tau[j] - P[j];
        for (int k = 0; k < 3; ++k) comp += R[j][k].eval(x) * p[k] / N;
        want += comp * comp;
    }
    want -= dsq;
    REQUIRE(leg_quartic(p, P, dsq).eval(x) == N * N * want);
}

TEST_CASE("leg quartics split over the coupling quadric", "[study]") {
    Hexapod hex = special_hexapod();
    for (int i = 0; i < 6; ++i) {
        MPoly Q = leg_quartic(hex.platform[i], hex.base[i], hex.leg_sq[i]);
        auto sp = lambda_decompose(Q);
        REQUIRE((Q - study_norm() * sp.lambda - sp.aux * study_psi()).is_zero());
        Rat dot(0);
        for (const auto& [mono, c] : study_psi().t) {
            auto it = sp.lambda.t.find(mono);
            if (it != sp.lambda.t.end()) dot += it->second * c;
        }
        REQUIRE(dot == Rat(0));
    }

    StudyFrame frame = study_frame(hex, Rat(1));
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            DeltaForm d = frame.delta(i, j);  // throws if a difference kept quadratic f terms
            REQUIRE(d.w.total_degree() <= 2);
            for (const auto& s : d.s) REQUIRE(s.total_degree() <= 1);
        }
}

TEST_CASE("determinantal quartics share a cubic with a vertex", "[study]") {
    Hexapod hex = special_hexapod();
    auto elim = eliminate_legs(study_frame(hex, Rat(1)));

    for (const auto& g : elim.G) REQUIRE(g.total_degree() == 4);
    REQUIRE(alternating_g_sum(elim).is_zero());

    REQUIRE(elim.linear_pencil);
    REQUIRE(elim.S.total_degree() == 3);
    REQUIRE(elim.S.degree_in(0) == 1);
    for (int k = 0; k < 6; ++k) {
        REQUIRE(elim.L[k].total_degree() == 1);
        REQUIRE((elim.G[k] - elim.L[k] * elim.S).is_zero());
    }

    REQUIRE(elim.has_vertex);
    REQUIRE(elim.vertex == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0)});
    std::vector<Rat> at(elim.vertex);
    REQUIRE(elim.S.eval(at) == Rat(0));
}

TEST_CASE("rational solution for the secondary quaternion", "[study]") {
    Hexapod hex = special_hexapod();
    StudyFrame frame = study_frame(hex, Rat(1));
    auto cr = f_cramer(frame, 0, 1, 2, 3);
    REQUIRE(cr.den.total_degree() == 4);
    for (const auto& n : cr.num) REQUIRE(n.total_degree() <= 5);

    // substituting f = num/den annihilates the three selected differences and
    // the coupling form: check on the polynomial level
    for (int other : {1, 2, 3}) {
        DeltaForm d = frame.delta(0, other);
        MPoly acc = d.w * cr.den;
        for (int m = 0; m < 4; ++m) acc = acc + d.s[m] * cr.num[m];
        REQUIRE(acc.is_zero());
    }
    MPoly psi_sub = MPoly::zero(4);
    for (int m = 0; m < 4; ++m) psi_sub = psi_sub + MPoly::var(4, m) * cr.num[m];
    REQUIRE(psi_sub.is_zero());
}

TEST_CASE("eliminated octic and motion polynomial degrees", "[study][slow]") {
    SECTION("special leg lengths") {
        auto mp = motion_gcd(special_hexapod(), Rat(1));
        REQUIRE(mp.s_e0_degree == 1);
        for (int c = 0; c < 3; ++c) {
            REQUIRE(mp.e_e0_degree[c] == 5);
            REQUIRE(mp.norm_power[c] == 1);
            REQUIRE(mp.f_degree[c] == 18);
        }
        REQUIRE_FALSE(mp.rigid);
        REQUIRE(mp.degree == 10);
        REQUIRE(mp.J.degree_in(0) == 0);
    }
    SECTION("generic leg lengths on the subspace") {
        auto mp = motion_gcd(generic_hexapod(), Rat(1));
        REQUIRE(mp.s_e0_degree == 2);
        for (int c = 0; c < 3; ++c) {
            REQUIRE(mp.e_e0_degree[c] == 6);
            REQUIRE(mp.norm_power[c] == 1);
            REQUIRE(mp.f_degree[c] == 22);
        }
        REQUIRE_FALSE(mp.rigid);
        REQUIRE(mp.degree == 12);
    }
    SECTION("legs off the subspace give a constant") {
        auto legs = fixtures::generic_legs();
        legs[3] += Rat(1);
        auto mp = motion_gcd({fixtures::base_tuple(), fixtures::platform_tuple(), legs}, Rat(1));
        REQUIRE(mp.rigid);
    }
}

TEST_CASE("motion samples satisfy the leg equations", "[study][slow]") {
    Hexapod hex = special_hexapod();
    auto samples = sample_motion(hex, Rat(1), 200, 256);
    REQUIRE(samples.size() >= 200);
    BigFloat gate = pow2(-67, 256);  // 2^-67 < 1e-20
    BigFloat one = BigFloat::from_int(1, 256);
    BigFloat unit_tol = pow2(-200, 256);
    for (const auto& s : samples) {
        REQUIRE(s.residual < gate);
        BigFloat N(256), psi(256);
        for (int m = 0; m < 4; ++m) {
            N += s.e[m] * s.e[m];
            psi += s.e[m] * s.f[m];
        }
        REQUIRE((N - one).abs() < unit_tol);
        REQUIRE(psi.abs() < pow2(-150, 256));
    }
    // the sweep visits genuinely different rotations
    std::set<std::string> keys;
    for (const auto& s : samples) keys.insert(s.e[0].str(25) + "|" + s.e[1].str(25) + "|" + s.e[2].str(25));
    REQUIRE(keys.size() >= 190);
}

TEST_CASE("structural observations on the leg subspace", "[study][slow]") {
    std::vector<std::array<Rat, 6>> leg_samples{
        fixtures::special_legs(), fixtures::generic_legs(),
        fixtures::legs_on_subspace(Rat(2), Rat(3), Rat(5)),
        fixtures::legs_on_subspace(rat(7, 2), Rat(13), rat(29, 5))};
    auto rep = observation_checks(fixtures::base_tuple(), fixtures::platform_tuple(), Rat(1), leg_samples);
    REQUIRE(rep.l_rank_three);
    REQUIRE(rep.vertex_unique);
    REQUIRE(rep.vertex_on_cubic);
    REQUIRE(rep.vertex_leg_independent);
    REQUIRE(rep.anchor_rank_two);
    REQUIRE(rep.projectivity_regular);
}

#include <catch2/catch_amalgamated.hpp>

#include "hexmotion/conformal.hpp"
#include "hexmotion/fixtures.hpp"
#include "hexmotion/linalg_exact.hpp"

#include <random>

using namespace hexmotion;

namespace {

/// Rational rotation from an integer quaternion (a, b, c, d) != 0.
Mat3 rot_from_quat(long a, long b, long c, long d) {
    Rat n = Rat(a * a + b * b + c * c + d * d);
    Mat3 R;
    R[0][0] = Rat(a * a + b * b - c * c - d * d) / n;
    R[0][1] = Rat(2 * (b * c - a * d)) / n;
    R[0][2] = Rat(2 * (b * d + a * c)) / n;
    R[1][0] = Rat(2 * (b * c + a * d)) / n;
    R[1][1] = Rat(a * a - b * b + c * c - d * d) / n;
    R[1][2] = Rat(2 * (c * d - a * b)) / n;
    R[2][0] = Rat(2 * (b * d - a * c)) / n;
    R[2][1] = Rat(2 * (c * d + a * b)) / n;
    R[2][2] = Rat(a * a - b * b - c * c + d * d) / n;
    return R;
}

std::vector<Rat> to_vec(const Point17<Rat>& p) { return std::vector<Rat>(p.begin(), p.end()); }

Vec3 apply_rot(const Mat3& R, const Vec3& v) {
    Vec3 r;
    for (size_t i = 0; i < 3; ++i)
        r[i] = R[i][0] * v[0] + R[i][1] * v[1] + R[i][2] * v[2];
    return r;
}

}  // namespace

TEST_CASE("defining quadrics vanish on embedded isometries", "[conformal]") {
    const auto& quadrics = x_defining_quadrics();
    REQUIRE(quadrics.size() == 38);
    for (const auto& q : quadrics) {
        CHECK(q.is_homogeneous());
        CHECK(q.total_degree() == 2);
    }
    std::mt19937 rng(77231u);
    std::uniform_int_distribution<long> qd(-5, 5), td(-8, 8);
    for (int iter = 0; iter < 20; ++iter) {
        long a = qd(rng), b = qd(rng), c = qd(rng), d = qd(rng);
        if (a * a + b * b + c * c + d * d == 0) {
            --iter;
            continue;
        }
        Mat3 R = rot_from_quat(a, b, c, d);
        Vec3 tau = vec3(Rat(td(rng)), Rat(td(rng)), Rat(td(rng)));
        auto pt = to_vec(embed_isometry(R, tau));
        for (const auto& q : quadrics) CHECK(is_zero(q.eval(pt)));
    }
}

TEST_CASE("quadric span ranks", "[conformal]") {
    const auto& quadrics = x_defining_quadrics();
    // coordinates: all monomials v_i v_j, i <= j, of the 17 variables
    std::vector<std::pair<int, int>> mono;
    for (int i = 0; i < kC17; ++i)
        for (int j = i; j < kC17; ++j) mono.emplace_back(i, j);
    auto row_of = [&](const MPoly& q) {
        std::vector<Rat> row(mono.size(), Rat(0));
        for (const auto& [e, c] : q.t) {
            int vi = -1, vj = -1;
            for (int v = 0; v < kC17; ++v)
                for (uint32_t k = 0; k < e[static_cast<size_t>(v)]; ++k) {
                    if (vi < 0)
                        vi = v;
                    else
                        vj = v;
                }
            if (vj < 0) vj = vi;
            for (size_t m = 0; m < mono.size(); ++m)
                if (mono[m] == std::make_pair(vi, vj)) row[m] = c;
        }
        return row;
    };
    Mat<Rat> all, core;
    for (size_t i = 0; i < quadrics.size(); ++i) {
        auto row = row_of(quadrics[i]);
        if (i < kCoreQuadricCount) core.push_back(row);
        all.push_back(row);
    }
    // the kinematic block alone has a one-dimensional rank deficit that the
    // skew block fills
    CHECK(mat_rank(core) == 28);
    CHECK(mat_rank(all) == 37);
}

TEST_CASE("embedding rejects non-rotations", "[conformal]") {
    Mat3 bad;
    for (auto& row : bad) row = {Rat(1), Rat(0), Rat(0)};
    CHECK_THROWS_AS(embed_isometry(bad, vec3(Rat(0), Rat(0), Rat(0))), std::invalid_argument);

    // orthogonal with determinant -1 (a reflection) is also rejected
    Mat3 refl{};
    refl[0][0] = Rat(-1);
    refl[1][1] = Rat(1);
    refl[2][2] = Rat(1);
    CHECK_THROWS_AS(embed_isometry(refl, vec3(Rat(0), Rat(0), Rat(0))), std::invalid_argument);
}

TEST_CASE("euler projection inverts the embedding", "[conformal]") {
    Mat3 R = rot_from_quat(2, -1, 3, 1);
    Vec3 tau = vec3(rat(7, 3), Rat(-2), rat(1, 5));
    auto [R2, t2] = euler_project(embed_isometry(R, tau));
    CHECK(R2 == R);
    CHECK(t2 == tau);

    Point17<Rat> boundary;
    boundary.fill(Rat(0));
    boundary[static_cast<size_t>(c17_r())] = Rat(1);
    CHECK_THROWS_AS(euler_project(boundary), std::domain_error);
}

TEST_CASE("spherical form computes squared leg error", "[conformal]") {
    std::mt19937 rng(90211u);
    std::uniform_int_distribution<long> cd(-6, 6);
    for (int iter = 0; iter < 10; ++iter) {
        Vec3 p = vec3(Rat(cd(rng)), Rat(cd(rng)), Rat(cd(rng)));
        Vec3 P = vec3(Rat(cd(rng)), Rat(cd(rng)), Rat(cd(rng)));
        Rat dsq = rat(cd(rng) * cd(rng) + 1, 2);
        MPoly f = spherical_form(p, P, dsq);
        CHECK(f.total_degree() == 1);

        Mat3 R = rot_from_quat(1, 2, 0, -2);
        Vec3 tau = vec3(Rat(cd(rng)), rat(cd(rng), 3), Rat(cd(rng)));
        Vec3 moved = apply_rot(R, p) + tau;
        Rat expected = dot(moved - P, moved - P) - dsq;
        CHECK(f.eval(to_vec(embed_isometry(R, tau))) == expected);
    }
}

TEST_CASE("boundary reduction of the kinematic block", "[conformal]") {
    const auto& quadrics = x_defining_quadrics();
    auto V = [](int i) { return MPoly::var(kC17, i); };
    std::vector<MPoly> expected;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            MPoly q = MPoly::zero(kC17);
            for (int k = 0; k < 3; ++k) q = q + V(c17_m(i, k)) * V(c17_m(j, k));
            expected.push_back(q);  // M M^T
        }
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            MPoly q = MPoly::zero(kC17);
            for (int k = 0; k < 3; ++k) q = q + V(c17_m(k, i)) * V(c17_m(k, j));
            expected.push_back(q);  // M^T M
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            expected.push_back(V(c17_m(r0, c0)) * V(c17_m(r1, c1)) -
                               V(c17_m(r0, c1)) * V(c17_m(r1, c0)));  // adj(M)
        }
    for (int i = 0; i < 3; ++i) {
        MPoly q = MPoly::zero(kC17);
        for (int k = 0; k < 3; ++k) q = q + V(c17_m(k, i)) * V(c17_y(k));
        expected.push_back(q);  // M^T y
    }
    for (int i = 0; i < 3; ++i) {
        MPoly q = MPoly::zero(kC17);
        for (int k = 0; k < 3; ++k) q = q + V(c17_m(i, k)) * V(c17_x(k));
        expected.push_back(q);  // M x
    }
    MPoly xx = MPoly::zero(kC17), yy = MPoly::zero(kC17);
    for (int i = 0; i < 3; ++i) {
        xx = xx + V(c17_x(i)) * V(c17_x(i));
        yy = yy + V(c17_y(i)) * V(c17_y(i));
    }
    expected.push_back(MPoly::zero(kC17) - xx);
    expected.push_back(MPoly::zero(kC17) - yy);

    REQUIRE(expected.size() == kCoreQuadricCount);
    for (size_t i = 0; i < kCoreQuadricCount; ++i) {
        MPoly reduced = quadrics[i].eval_partial(c17_h(), Rat(0));
        CHECK(reduced == expected[i]);
    }
}

TEST_CASE("bonds of the worked pair", "[conformal][slow]") {
    mpfr_prec_t prec = 256;
    auto base = photographic_map(fixtures::base_tuple());
    auto plat = photographic_map(fixtures::platform_tuple());
    auto matched = matched_directions(base, plat, prec);
    REQUIRE(matched.total_multiplicity == 14);

    const auto& quadrics = x_defining_quadrics();
    double qtol = 1e-50;
    for (const auto& pair : matched.pairs) {
        Bond b = bond_solve(base.tuple, plat.tuple, pair, prec);

        // cofactor vector solves the pseudo-spherical system
        for (size_t i = 0; i < 6; ++i) {
            BigComplex res = BigComplex::from_rat(Rat(-2), prec) *
                                 (b.W[i] * b.V[i] * b.alpha + b.V[i] * b.lambda + b.W[i] * b.mu) +
                             b.rho;
            CHECK(res.abs().to_double() < qtol);
        }

        // the bond satisfies every defining quadric and lies on h = 0
        auto pt = bond_point(b, prec);
        CHECK(pt[static_cast<size_t>(c17_h())].is_zero());
        for (const auto& q : quadrics) CHECK(eval_mpoly_c(q, pt, prec).abs().to_double() < qtol);

        // tangent rows: contained in {h = 0} and annihilated by all gradients
        CMat rows = tangent_space_at_bond(b, prec);
        for (const auto& row : rows) CHECK(row[static_cast<size_t>(c17_h())].is_zero());
        for (const auto& q : quadrics) {
            auto grad = gradient_at(q, pt, prec);
            for (const auto& row : rows) {
                BigComplex dotp(prec);
                for (size_t k = 0; k < kC17; ++k) dotp += grad[k] * row[k];
                CHECK(dotp.abs().to_double() < qtol);
            }
        }

        // beta = alpha r1 + lambda r4 + mu r5 + rho r6
        for (size_t k = 0; k < kC17; ++k) {
            BigComplex combo = b.alpha * rows[0][k] + b.lambda * rows[3][k] + b.mu * rows[4][k] +
                               b.rho * rows[5][k];
            CHECK((combo - pt[k]).abs().to_double() < qtol);
        }
    }
}

TEST_CASE("bond cofactor line tracks platform rescaling", "[conformal]") {
    mpfr_prec_t prec = 192;
    auto base = photographic_map(fixtures::base_tuple());
    auto plat = photographic_map(fixtures::platform_tuple());
    auto matched = matched_directions(base, plat, prec);
    Bond b = bond_solve(base.tuple, plat.tuple, matched.pairs[0], prec);
    BondLine L = bond_line(b, prec);

    for (double g : {2.0, -3.0, 0.5}) {
        BigComplex gamma = BigComplex::from_double(g, 0.0, prec);
        auto om = L.at(gamma, prec);
        for (size_t i = 0; i < 6; ++i) {
            // pseudo-spherical system of the gamma-scaled platform
            BigComplex Vg = gamma * b.V[i];
            BigComplex res = BigComplex::from_rat(Rat(-2), prec) *
                                 (b.W[i] * Vg * om[0] + Vg * om[1] + b.W[i] * om[2]) +
                             om[3];
            CHECK(res.abs().to_double() < 1e-40);
        }
    }
}

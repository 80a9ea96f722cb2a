#include <catch2/catch_amalgamated.hpp>

#include "hexmotion/gauss.hpp"
#include "hexmotion/linalg_complex.hpp"
#include "hexmotion/linalg_exact.hpp"
#include "hexmotion/mpoly.hpp"
#include "hexmotion/mpoly_gcd.hpp"
#include "hexmotion/rational.hpp"
#include "hexmotion/reconstruct.hpp"
#include "hexmotion/resultant.hpp"
#include "hexmotion/roots.hpp"
#include "hexmotion/upoly.hpp"

using namespace hexmotion;

TEST_CASE("rational parsing and gcd", "[exactalg]") {
    REQUIRE(rat_parse("3/4") == rat(3, 4));
    REQUIRE(rat_parse("-6/8") == rat(-3, 4));
    REQUIRE(rat_parse("42") == rat(42));
    REQUIRE(rat_parse("-1.25") == rat(-5, 4));
    REQUIRE_THROWS(rat_parse("1/0"));
    REQUIRE(rat_str(rat(-6, 8)) == "-3/4");
    REQUIRE(rat_gcd(rat(4, 9), rat(2, 3)) == rat(2, 9));
    REQUIRE(rat_gcd(rat(0), rat(5, 7)) == rat(5, 7));
}

TEST_CASE("gaussian rational field ops", "[exactalg]") {
    GaussRat i = GaussRat::I();
    REQUIRE(i * i == GaussRat(Rat(-1)));
    GaussRat z(rat(1, 2), rat(-3, 4));
    REQUIRE(z * z.conj() == GaussRat(z.norm2()));
    REQUIRE((z / z) == GaussRat(Rat(1)));
    REQUIRE_THROWS(z / GaussRat());
}

TEST_CASE("bigfloat mantissa round trip", "[exactalg]") {
    BigFloat x = BigFloat::from_rat(rat(7, 16), 128);
    auto [m, e] = x.to_mant_exp();
    Rat back(m);
    Rat scale;
    if (e >= 0) {
        back *= Rat(Int(1) << e);
    } else {
        back /= Rat(Int(1) << -e);
    }
    REQUIRE(back == rat(7, 16));
    REQUIRE(pow2(-3, 64).to_double() == 0.125);
    REQUIRE(BigFloat::from_int(2, 256).sqrt().prec() == 256);
}

TEST_CASE("bigcomplex sqrt squares back", "[exactalg]") {
    BigComplex z = BigComplex::from_double(-3.5, 1.25, 192);
    BigComplex r = z.sqrt();
    BigComplex back = r * r - z;
    REQUIRE(back.abs() < pow2(-150, 192));
    // principal branch: nonnegative real part
    REQUIRE(r.re.sign() >= 0);
}

TEST_CASE("upoly divrem and gcd", "[exactalg]") {
    using P = UPoly<Rat>;
    P f({rat(-1), rat(0), rat(1)});            // t^2 - 1
    P g({rat(1), rat(1)});                     // t + 1
    auto [q, r] = f.divrem(g);
    REQUIRE(r.is_zero_poly());
    REQUIRE(q == P({rat(-1), rat(1)}));
    REQUIRE(q * g + r == f);

    P a({rat(2), rat(3), rat(1)});             // (t+1)(t+2)
    P b({rat(-1), rat(0), rat(1)});            // (t-1)(t+1)
    REQUIRE(gcd_monic(a, b) == P({rat(1), rat(1)}));
}

TEST_CASE("yun squarefree decomposition", "[exactalg]") {
    using P = UPoly<Rat>;
    P lin1({rat(-1, 2), rat(1)});              // t - 1/2
    P lin2({rat(2), rat(1)});                  // t + 2
    P f = lin1 * lin1 * lin1 * lin2;
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 2);
    REQUIRE(parts[0].first == lin2);
    REQUIRE(parts[0].second == 1);
    REQUIRE(parts[1].first == lin1);
    REQUIRE(parts[1].second == 3);
}

TEST_CASE("primitive univariate gcd", "[exactalg]") {
    using P = UPoly<Rat>;
    P g({rat(1, 3), rat(2), rat(1)});
    P a = g * P({rat(-7), rat(5)});
    P b = g * P({rat(11), rat(0), rat(2)});
    P got = upoly_gcd_primitive(a, b);
    // primitive normalization of g = t^2 + 2t + 1/3 is 3t^2 + 6t + 1
    REQUIRE(got == P({rat(1), rat(6), rat(3)}));
}

TEST_CASE("resultant orientation pins", "[exactalg]") {
    // Res(t - a, t - b) = b - a and Res(t^2 + 1, t^2 - 1) = 4
    MPoly t = MPoly::var(1, 0);
    MPoly f = t - MPoly::constant(1, rat(5));
    MPoly g = t - MPoly::constant(1, rat(2));
    REQUIRE(sylvester_resultant(f, g, 0) == MPoly::constant(1, rat(-3)));

    MPoly t2 = t * t;
    MPoly one = MPoly::constant(1, rat(1));
    REQUIRE(sylvester_resultant(t2 + one, t2 - one, 0) == MPoly::constant(1, rat(4)));
}

TEST_CASE("resultant eliminates a variable by interpolation", "[exactalg]") {
    // vars x, y, z
    MPoly x = MPoly::var(3, 0), y = MPoly::var(3, 1), z = MPoly::var(3, 2);
    MPoly f = x * x - y;
    MPoly g = x - z;
    REQUIRE(sylvester_resultant(f, g, 0) == z * z - y);

    // homogeneous chart reduction: Res_x(x^2 - y z, x - y) = y^2 - y z
    MPoly fh = x * x - y * z;
    MPoly gh = x - y;
    REQUIRE(sylvester_resultant(fh, gh, 0) == y * y - y * z);
}

TEST_CASE("bareiss determinant equals cofactor expansion", "[exactalg]") {
    MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
    MPoly one = MPoly::constant(2, rat(1));
    std::vector<std::vector<MPoly>> m = {
        {x, y, one},
        {y, one, x},
        {one, x, y},
    };
    // det = 3xy - x^3 - y^3 - 1... verify against direct expansion
    MPoly direct = x * (one * y - x * x) - y * (y * y - x * one) + one * (y * x - one * one);
    REQUIRE(det_bareiss(m) == direct);
}

TEST_CASE("mpoly exact division and interpolation", "[exactalg]") {
    MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
    MPoly p = (x + y) * (x - y) * (x + MPoly::constant(2, rat(1, 2)));
    auto q = p.exact_div(x + y);
    REQUIRE(q.has_value());
    REQUIRE(*q * (x + y) == p);
    REQUIRE_FALSE(p.exact_div(x + MPoly::constant(2, rat(1))).has_value());

    MPoly target = x * x * y + MPoly::constant(2, rat(3)) * y - x;
    std::vector<Rat> nodes{rat(0), rat(1), rat(-1)};
    std::vector<MPoly> vals;
    for (const auto& n : nodes) vals.push_back(target.eval_partial(0, n));
    REQUIRE(newton_interpolate(0, nodes, vals) == target);
}

TEST_CASE("multivariate gcd with certification", "[exactalg]") {
    MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
    MPoly g = (x + y) * (x + y);
    MPoly a = g * (x - y);
    MPoly b = g * (x * x + MPoly::constant(2, rat(1)));
    REQUIRE(mpoly_gcd(a, b) == g);

    MPoly xx = MPoly::var(3, 0), yy = MPoly::var(3, 1), zz = MPoly::var(3, 2);
    MPoly h = xx + yy + zz;
    MPoly p1 = h * (xx * zz + yy);
    MPoly p2 = h * (yy * zz + xx);
    REQUIRE(mpoly_gcd(p1, p2) == h);

    // coprime inputs
    REQUIRE(mpoly_gcd(xx + yy, xx - yy) == MPoly::constant(3, rat(1)));
}

TEST_CASE("homogeneous gcd stays homogeneous", "[exactalg]") {
    MPoly x = MPoly::var(3, 0), y = MPoly::var(3, 1), z = MPoly::var(3, 2);
    MPoly g = x * y - z * z;
    MPoly a = g * (x + y);
    MPoly b = g * (x * x + y * z);
    MPoly got = mpoly_gcd(a, b);
    REQUIRE(got == g);
    REQUIRE(got.is_homogeneous());
    REQUIRE(mpoly_gcd_list({a, b, g * z}) == g);
}

TEST_CASE("exact linear algebra", "[exactalg]") {
    Mat<Rat> m = {
        {rat(1), rat(2), rat(3), rat(4)},
        {rat(2), rat(4), rat(6), rat(8)},
        {rat(0), rat(1), rat(1), rat(0)},
    };
    REQUIRE(mat_rank(m) == 2);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) {
        auto img = mat_apply(m, v);
        for (const auto& c : img) REQUIRE(c == 0);
    }

    Mat<Rat> a = {{rat(2), rat(1)}, {rat(1), rat(3)}};
    auto x = solve_linear(a, {rat(5), rat(10)});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] == rat(1));
    REQUIRE((*x)[1] == rat(3));
    REQUIRE(det_field(a) == rat(5));

    Mat<Rat> inconsistent = {{rat(1), rat(1)}, {rat(1), rat(1)}};
    REQUIRE_FALSE(solve_linear(inconsistent, {rat(0), rat(1)}).has_value());

    Mat<GaussRat> gm = {{GaussRat::I(), GaussRat(Rat(1))}, {GaussRat(Rat(-1)), GaussRat::I()}};
    REQUIRE(mat_rank(gm) == 1);  // second row = i * first row
}

TEST_CASE("numeric nullspace under tolerance", "[exactalg]") {
    mpfr_prec_t prec = 192;
    auto c = [&](double re, double im = 0.0) { return BigComplex::from_double(re, im, prec); };
    CMat m = {
        {c(1), c(2), c(3)},
        {c(2), c(4), c(6)},
    };
    BigFloat tol = pow2(-100, prec);
    REQUIRE(crank(m, tol) == 1);
    auto ns = cnullspace(m, tol);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) {
        for (const auto& r : cmat_apply(m, v, prec)) REQUIRE(r.abs() < pow2(-90, prec));
    }

    auto [part, basis] = csolve_affine(m, {c(6), c(12)}, tol);
    REQUIRE_FALSE(part.empty());
    CVec img = cmat_apply(m, part, prec);
    REQUIRE((img[0] - c(6)).abs() < pow2(-90, prec));
    REQUIRE(basis.size() == 2);
}

TEST_CASE("roots with multiplicities", "[exactalg]") {
    mpfr_prec_t prec = 256;
    UPoly<Rat> half({rat(-1, 2), rat(1)});
    UPoly<Rat> f = half * half * half;
    auto rs = roots_with_multiplicity(f, prec);
    REQUIRE(rs.size() == 1);
    REQUIRE(rs[0].multiplicity == 3);
    REQUIRE((rs[0].z - BigComplex::from_rat(rat(1, 2), prec)).abs() < pow2(-200, prec));

    UPoly<Rat> g({rat(1), rat(0), rat(1)});  // t^2 + 1
    auto gr = roots_with_multiplicity(g, prec);
    REQUIRE(gr.size() == 2);
    REQUIRE(gr[0].z.im.sign() < 0);  // sorted by (re, im)
    REQUIRE((gr[1].z - BigComplex::from_gauss(GaussRat::I(), prec)).abs() < pow2(-200, prec));

    // degree 7 with known integer roots
    UPoly<Rat> prod({rat(1)});
    for (long k = 1; k <= 7; ++k) prod = prod * UPoly<Rat>({rat(-k), rat(1)});
    auto pr = roots_with_multiplicity(prod, prec);
    REQUIRE(pr.size() == 7);
    for (long k = 1; k <= 7; ++k)
        REQUIRE((pr[k - 1].z - BigComplex::from_rat(Rat(k), prec)).abs() < pow2(-200, prec));

    // gaussian-rational coefficients: (t - i)(t - 2)
    UPoly<GaussRat> gi({GaussRat(Rat(2)) * GaussRat::I(), -GaussRat(Rat(2)) - GaussRat::I(), GaussRat(Rat(1))});
    auto gir = roots_with_multiplicity(gi, prec);
    REQUIRE(gir.size() == 2);
    REQUIRE((gir[0].z - BigComplex::from_gauss(GaussRat::I(), prec)).abs() < pow2(-200, prec));
    REQUIRE((gir[1].z - BigComplex::from_rat(Rat(2), prec)).abs() < pow2(-200, prec));
}

TEST_CASE("rational reconstruction accepts exact values only", "[exactalg]") {
    mpfr_prec_t prec = 256;
    BigFloat third = BigFloat::from_rat(rat(1, 3), prec);
    auto r = rationalize(third);
    REQUIRE(r.has_value());
    REQUIRE(*r == rat(1, 3));

    BigFloat pi(prec);
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    REQUIRE_FALSE(rationalize(pi).has_value());

    BigFloat big = BigFloat::from_rat(rat(123456789), prec);
    auto ri = rationalize(big);
    REQUIRE(ri.has_value());
    REQUIRE(*ri == rat(123456789));

    BigComplex z{BigFloat::from_rat(rat(-7, 11), prec), BigFloat::from_rat(rat(2, 9), prec)};
    auto zr = rationalize(z);
    REQUIRE(zr.has_value());
    REQUIRE(*zr == GaussRat(rat(-7, 11), rat(2, 9)));
}

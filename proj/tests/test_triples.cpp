#include <doctest.h>

#include <cmath>

#include "chg/errors.hpp"
#include "chg/sampling.hpp"

using namespace chg;

namespace {

Vec3 e(int i)
{
    Vec3 v = Vec3::Zero();
    v(i) = 1;
    return v;
}

SCoords coords_close_to(const SCoords& a, const SCoords& b, double tol)
{
    CHECK(std::abs(a.t - b.t) < tol);
    CHECK(std::abs(a.t1 - b.t1) < tol);
    CHECK(std::abs(a.t2 - b.t2) < tol);
    CHECK(std::abs(a.alpha - b.alpha) < tol);
    CHECK(std::abs(a.beta - b.beta) < tol);
    CHECK(a.sigma == b.sigma);
    return a;
}

} // namespace

TEST_CASE("classification")
{
    CHECK(classify_triple(Triple{point(e(0)), point(e(1)), point(e(2))}) == TripleClass::NotRegular);
    Point a = point(e(2)), b = point(Vec3(0, std::sinh(0.5), std::cosh(0.5))), c = point(Vec3(0, std::sinh(1.5), std::cosh(1.5)));
    CHECK(classify_triple(Triple{a, b, c}) == TripleClass::NotRegular);
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        Triple T = random_strongly_regular(rng, sign_patterns()[i % 4]);
        CHECK(classify_triple(T) == TripleClass::StronglyRegular);
    }
    Triple R = random_strongly_regular(rng, {-1, -1, -1}, true);
    CHECK(classify_triple(R) == TripleClass::RealStronglyRegular);
}

TEST_CASE("standard gram and coordinates")
{
    Rng rng(2);
    for (int i = 0; i < 40; ++i) {
        const Signs& s = sign_patterns()[i % 4];
        Triple T = random_strongly_regular(rng, s, i % 8 == 0);
        Gram G = standard_gram(T);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(G(j, j) - double(s[j])) < 1e-12);
        CHECK(std::abs(G(0, 1).imag()) < 1e-12);
        CHECK(G(0, 1).real() > 0);
        CHECK(G(1, 2).real() > 0);
        Triple U{point(Vec3(cplx(0.3, 2) * T.p1.rep)), point(Vec3(cplx(-1, 0.1) * T.p2.rep)), point(Vec3(cplx(0, -4) * T.p3.rep))};
        CHECK((standard_gram(U) - G).norm() < 1e-12 * G.norm());
        SCoords c = s_coords(T);
        CHECK(std::abs(G.determinant().real() - s[0] * s[1] * s[2] * c.beta) < 1e-9 * (1 + std::abs(c.beta)));
        CHECK(std::abs(surface_residual(c)) < 1e-9);
        coords_close_to(s_coords(triple_from_coords(c)), c, 1e-10);
        if (i % 8 == 0)
            CHECK(G.imag().norm() < 1e-12);
    }
}

TEST_CASE("coordinate construction")
{
    SCoords c;
    c.sigma = {-1, -1, -1};
    c.t = 1;
    c.t1 = c.t2 = 4;
    c.alpha = 0;
    c.beta = surface_beta(c.t, c.t1, c.t2, c.alpha);
    CHECK(c.beta == doctest::Approx(9));
    Triple T = triple_from_coords(c);
    for (int j = 0; j < 3; ++j)
        CHECK(T[j].sign == -1);

    // the pentagon branch at t4 = 2
    SCoords p;
    p.sigma = {1, -1, -1};
    p.alpha = 7 * std::sqrt(3.0) / 16;
    p.beta = -5.0 / 8;
    CHECK(admissible_signs(p.sigma, p.alpha, p.beta));

    SCoords bad = c;
    bad.t1 = 0.5;
    CHECK_THROWS_AS(triple_from_coords(bad), Error);
}

TEST_CASE("decomposition")
{
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        const Signs& s = sign_patterns()[i % 4];
        Triple T{random_point(rng, s[0]), random_point(rng, s[1]), random_point(rng, s[2])};
        Mat3 F = product(T);
        Decomposition d = decompose_detailed(F);
        CHECK(classify_triple(d.triple) != TripleClass::NotRegular);
        CHECK(reflection_product_residual({d.triple.p1.rep, d.triple.p2.rep, d.triple.p3.rep}, F) < 1e-8);
        // the raw Gram has determinant sigma1 sigma2 sigma3 beta
        double b = (F.trace().real() + 1) / 4;
        CHECK(std::abs(d.gram.determinant().real() - d.sigma[0] * d.sigma[1] * d.sigma[2] * b) < 1e-8 * (1 + std::abs(b)));
    }
    // three points on one geodesic: trace -1
    Point a = point(e(2)), b = point(Vec3(0, std::sinh(0.5), std::cosh(0.5))), c = point(Vec3(0, std::sinh(1.5), std::cosh(1.5)));
    Mat3 F = reflection(c) * reflection(b) * reflection(a);
    try {
        decompose_three_reflections(F);
        FAIL("expected TraceMinusOne");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TraceMinusOne);
    }
}

TEST_CASE("bending moves and lines")
{
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const Signs& s = sign_patterns()[i % 4];
        Triple T = random_strongly_regular(rng, s);
        SCoords c = s_coords(T);
        Triple V = apply_move(T, {Pair::P12, 0.3});
        Triple H = apply_move(T, {Pair::P23, -0.4});
        SCoords cv = s_coords(V), ch = s_coords(H);
        CHECK(std::abs(cv.t1 - c.t1) < 1e-12 * std::abs(c.t1) * 10);
        CHECK(std::abs(ch.t2 - c.t2) < 1e-12 * std::abs(c.t2) * 10);
        CHECK(std::abs(cv.alpha - c.alpha) < 1e-10);
        CHECK(std::abs(cv.beta - c.beta) < 1e-10);
        CHECK((product(V) - product(T)).norm() < 1e-10 * product(T).norm());
        CHECK(classify_triple(V) == classify_triple(T));

        LineSolution ls = vertical_line(T, c.t2, c.t >= 1 ? 1 : -1);
        CHECK(std::abs(ls.s) < 1e-8);
        LineMinimum m = line_minimum(T, Pair::P12);
        double sg = s[1] * s[2];
        CHECK(sg * line_coordinate(T, Pair::P12, m.s + 0.1) > sg * m.value);
        CHECK(sg * line_coordinate(T, Pair::P12, m.s - 0.1) > sg * m.value);
        CHECK(std::abs(s_coords(apply_move(T, {Pair::P12, m.s})).t - 1) < 1e-6);
        CHECK_THROWS_AS(vertical_line(T, m.value - sg * 0.5, 1), Error);
    }
}

TEST_CASE("connecting triples")
{
    Rng rng(5);
    Triple A = random_strongly_regular(rng, {-1, -1, -1});
    CHECK(connect_triples(A, A).program.empty());

    Triple B = apply_move(A, {Pair::P12, 0.37});
    Connection c1 = connect_triples(A, B);
    REQUIRE(c1.program.size() == 1);
    CHECK(c1.program[0].pair == Pair::P12);
    CHECK(std::abs(c1.program[0].s - 0.37) < 1e-8);

    for (int i = 0; i < 20; ++i) {
        const Signs& s = sign_patterns()[i % 4];
        auto [al, be] = random_invariants(rng, s);
        Triple P = triple_from_coords(random_coords(rng, s, al, be));
        Triple Q = triple_from_coords(random_coords(rng, s, al, be));
        Connection c = connect_triples(P, Q);
        CHECK(c.program.size() <= 3);
        CHECK(c.coord_residual < 1e-8);
        CHECK(c.point_residual < 1e-7);
        CHECK(projective_mismatch(c.conjugator, apply_program(P, c.program), Q) < 1e-7);
    }
    Triple X = random_strongly_regular(rng, {-1, -1, -1});
    Triple Y = random_strongly_regular(rng, {1, -1, -1});
    CHECK_THROWS_AS(connect_triples(X, Y), Error);
}

TEST_CASE("tangent residual")
{
    Rng rng(6);
    Triple T = random_strongly_regular(rng, {-1, -1, -1});
    TripleTangent z{{Tangent{T.p1.rep, Vec3::Zero()}, Tangent{T.p2.rep, Vec3::Zero()}, Tangent{T.p3.rep, Vec3::Zero()}}};
    CHECK(tangent_ef_residual(T, z) == 0);

    TripleTangent r;
    for (int j = 0; j < 3; ++j)
        r.t[j] = Tangent{T[j].rep, project_orthogonal(T[j], random_vector(rng))};
    double e1 = tangent_ef_residual(T, r);
    CHECK(e1 > 1e-6);

    // d/de R(p + e<p,p>v) = 2 hat R(p), so R3 F' R1 R2 is twice the residual operator
    const double eps = 1e-5;
    auto moved = [&](double h) {
        Mat3 m = Mat3::Identity();
        for (int j = 0; j < 3; ++j) {
            Vec3 p = T[j].rep;
            m = (reflection(Vec3(p + h * self_product(p) * r.t[j].v)) * m).eval();
        }
        return m;
    };
    Mat3 dF = (moved(eps) - moved(-eps)) / (2 * eps);
    Mat3 lhs = reflection(T.p3) * dF * reflection(T.p1) * reflection(T.p2);
    Eigen::JacobiSVD<Mat3> svd(lhs);
    CHECK(std::abs(svd.singularValues()(0) - 2 * e1) < 1e-6 * (1 + e1));

    for (auto& t : r.t)
        t.v *= 2.0;
    CHECK(tangent_ef_residual(T, r) == doctest::Approx(2 * e1));
}

TEST_CASE("spherical fixture")
{
    SphericalFixture f = spherical_fixture();
    CHECK(f.p1.sign == -1);
    CHECK(f.p2.sign == 1);
    CHECK(std::abs(self_product(f.v1)) < 1e-12);
    CHECK(std::abs(self_product(f.v2)) < 1e-12);
    CHECK(line_type(f.p2, f.p3) == LineType::Hyperbolic);
    CHECK(line_type(f.p2b, f.p3) == LineType::Spherical);
    CHECK(line_type(f.p1, f.p2) == LineType::Hyperbolic);
}

#include <doctest.h>

#include <cmath>

#include "chg/errors.hpp"
#include "chg/sampling.hpp"

using namespace chg;

namespace {

Mat3 diag(cplx a, cplx b, cplx c)
{
    Mat3 m = Mat3::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

} // namespace

TEST_CASE("reflections")
{
    Mat3 r = reflection(point(Vec3(0, 0, 1)));
    CHECK((r - diag(-1, -1, 1)).norm() < 1e-15);
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        Point p = random_point(rng, i % 2 ? 1 : -1);
        Mat3 R = reflection(p);
        CHECK((R * R - Mat3::Identity()).norm() < 1e-12);
        CHECK(isometry_defect(R) < 1e-12);
        CHECK(std::abs(R.trace() + 1.0) < 1e-12);
        CHECK((R * p.rep - p.rep).norm() < 1e-12);
    }
}

TEST_CASE("trace formula")
{
    Rng rng(2);
    Gram one(1, 1);
    one << -1;
    CHECK(std::abs(trace_formula(one) + 1.0) < 1e-15);
    for (int i = 0; i < 30; ++i) {
        Point a = random_point(rng, -1), b = random_point(rng, i % 2 ? 1 : -1), c = random_point(rng, -1);
        Gram G2 = gram(std::vector<Point>{a, b});
        CHECK(std::abs(trace_formula(G2) - (4 * tance(a, b) - 1.0)) < 1e-10);
        Gram G3 = gram(std::vector<Point>{a, b, c});
        cplx expect(4 * beta(a, b, c) - 1, 8 * alpha(a, b, c));
        CHECK(std::abs(trace_formula(G3) - expect) < 1e-9 * (1 + std::abs(expect)));
    }
    Gram z(2, 2);
    z << 0, 1, 1, -1;
    CHECK_THROWS_AS(trace_formula(z), Error);
}

TEST_CASE("regularity")
{
    CHECK_FALSE(is_regular(Mat3::Identity()));
    CHECK_FALSE(is_regular(reflection(point(Vec3(0.2, 0.1, 1)))));
    const double th = 0.7, ph = 1.9;
    CHECK(is_regular(diag(std::polar(1.0, th), std::polar(1.0, ph), std::polar(1.0, -th - ph))));
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Triple T = random_strongly_regular(rng, sign_patterns()[i % 4]);
        CHECK(is_regular(product(T)));
    }
}

TEST_CASE("centralizer")
{
    cplx lam = std::polar(1.0, 0.8);
    Mat3 F = diag(lam, std::conj(lam), 1.0);
    auto b = centralizer_basis(F);
    for (const Mat3& x : b) {
        CHECK((x * F - F * x).norm() < 1e-12);
        CHECK(lie_defect(x) < 1e-12);
        // diagonal for diagonal F with distinct eigenvalues
        CHECK((x - Mat3(x.diagonal().asDiagonal())).norm() < 1e-12);
    }
    CHECK((b[0] * b[1] - b[1] * b[0]).norm() < 1e-12);

    Rng rng(4);
    for (int i = 0; i < 30; ++i) {
        Mat3 G = product(random_strongly_regular(rng, sign_patterns()[i % 4]));
        auto c = centralizer_basis(G);
        for (const Mat3& x : c) {
            CHECK((x * G - G * x).norm() < 1e-10 * G.norm());
            CHECK(lie_defect(x) < 1e-10);
        }
        CHECK((c[0] * c[1] - c[1] * c[0]).norm() < 1e-10);
        // independent
        Eigen::Matrix<double, 18, 2> A;
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 9; ++j) {
                A(j, k) = c[k](j).real();
                A(9 + j, k) = c[k](j).imag();
            }
        Eigen::JacobiSVD<Eigen::Matrix<double, 18, 2>> svd(A);
        CHECK(svd.singularValues()(1) > 1e-3 * svd.singularValues()(0));
    }
    CHECK_THROWS_AS(centralizer_basis(Mat3::Identity()), Error);
}

TEST_CASE("conjugator")
{
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        Mat3 F = product(random_strongly_regular(rng, sign_patterns()[i % 4]));
        Mat3 h = random_isometry(rng, 0.7);
        Mat3 Fp = h * F * h.inverse();
        Mat3 g = conjugator(F, Fp);
        CHECK((g * F * g.inverse() - Fp).norm() < 1e-9 * Fp.norm());
        CHECK(isometry_defect(g) < 1e-8);
        Mat3 c = conjugator(F, F);
        CHECK((c * F - F * c).norm() < 1e-9 * F.norm());
    }
    // same eigenvalues, positive and negative eigendirections swapped
    const double a = 0.4, b = 1.3;
    Mat3 E = diag(std::polar(1.0, a), std::polar(1.0, b), std::polar(1.0, -a - b));
    Mat3 Es = diag(std::polar(1.0, a), std::polar(1.0, -a - b), std::polar(1.0, b));
    try {
        conjugator(E, Es);
        FAIL("expected NotConjugate");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotConjugate);
    }
}

TEST_CASE("two-reflection split")
{
    Rng rng(6);
    for (int i = 0; i < 30; ++i) {
        Point a = random_point(rng, -1), b = random_point(rng, -1);
        Mat3 G = reflection(a) * reflection(b);
        for (double s : {0.0, 0.7, -1.3}) {
            auto [p4, p5] = split_two_reflections(G, s);
            CHECK(p4.sign == -1);
            CHECK(p5.sign == -1);
            CHECK((reflection(p4) * reflection(p5) - G).norm() < 1e-10 * G.norm());
            auto [q4, q5] = bend_pair(p4, p5, 0.37);
            CHECK((reflection(q4) * reflection(q5) - G).norm() < 1e-9 * G.norm());
        }
    }
    CHECK_THROWS_AS(split_two_reflections(Mat3::Identity()), Error);
}

TEST_CASE("exp and log")
{
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        Mat3 X = random_lie(rng, 0.5);
        Mat3 g = expm(X);
        CHECK(isometry_defect(g) < 1e-12);
        CHECK((logm(g) - X).norm() < 1e-10);
    }
    for (int k = 0; k < 3; ++k)
        CHECK(nearest_cube_root_index(cube_root_of_unity(k) * 1.01) == k);
    Mat3 g = random_isometry(rng, 0.3);
    CHECK((reduce_mod_center(Mat3(cube_root_of_unity(1) * g)) - g).norm() < 1e-12);
}

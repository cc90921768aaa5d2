#include "chg/pentagons.hpp"

#include <cmath>

namespace chg {

Mat3 pentagon_product(const std::array<Point, 5>& pts)
{
    Mat3 m = Mat3::Identity();
    for (const Point& p : pts)
        m = (reflection(p) * m).eval();
    return m;
}

double pentagon_residual(const std::array<Point, 5>& pts, int* k)
{
    Mat3 m = pentagon_product(pts);
    int kk = nearest_cube_root_index(m.trace() / 3.0);
    if (k)
        *k = kk;
    return (m - cube_root_of_unity(kk) * Mat3::Identity()).norm();
}

int verify_pentagon(const std::array<Point, 5>& pts, double tol)
{
    int k = 0;
    if (pentagon_residual(pts, &k) > std::max(tol, 1e-9))
        throw Error(ErrorCode::NotAPentagon, "relation does not hold");
    int positive = 0;
    for (int j = 0; j < 5; ++j) {
        const Point& a = pts[j];
        const Point& b = pts[(j + 1) % 5];
        if (a.sign > 0)
            ++positive;
        if (same_point(a, b, tol))
            throw Error(ErrorCode::NotAPentagon, "adjacent points coincide");
        if (std::abs(form(a.rep, b.rep)) <= std::sqrt(tol) * a.rep.norm() * b.rep.norm())
            throw Error(ErrorCode::NotAPentagon, "adjacent points are orthogonal");
    }
    if (positive > 1)
        throw Error(ErrorCode::NotAPentagon, "more than one positive point");
    return k;
}

double relation_residual(const Pentagon& P, double tol)
{
    Triple T = P.head();
    double a = alpha(T.p1, T.p2, T.p3);
    double b = beta(T.p1, T.p2, T.p3);
    cplx lhs = cplx(4 * b - 1, 8 * a);
    cplx rhs = P.delta() * (4 * tance(P.points[3], P.points[4]) - 1.0);
    (void)tol;
    return std::abs(lhs - rhs);
}

Pentagon build_pentagon(int delta_k, const Point& p4, const Point& p5, double tol)
{
    if (p4.sign > 0 || p5.sign > 0)
        throw Error(ErrorCode::InvalidInput, "p4 and p5 must be negative");
    if (same_point(p4, p5, tol))
        throw Error(ErrorCode::EqualPoints);
    if (std::abs(form(p4.rep, p5.rep)) <= tol * p4.rep.norm() * p5.rep.norm())
        throw Error(ErrorCode::OrthogonalPoints);
    const int k = ((delta_k % 3) + 3) % 3;
    Mat3 F = cube_root_of_unity(k) * reflection(p4) * reflection(p5);
    std::optional<Signs> pref;
    if (k != 0)
        pref = Signs{1, -1, -1};
    Decomposition d = decompose_detailed(F, pref, tol);
    Pentagon P{{d.triple.p1, d.triple.p2, d.triple.p3, p4, p5}, k};
    int got = verify_pentagon(P.points, tol);
    if (got != k)
        throw Error(ErrorCode::NotAPentagon, "constructed pentagon has a different delta");
    return P;
}

double moduli_residual(const PentagonModuli& m)
{
    const double p = m.t1 * m.t2;
    const double q = 4 * m.t4 - 1;
    return (m.t1 - 1) * (m.t2 - 1) - p * (m.t - 1) * (m.t - 1) - 3 * q * q / (256 * p) - (3 - 4 * m.t4) / 8;
}

Pentagon pentagon_from_moduli(const PentagonModuli& m, int delta_k, double s5, double tol)
{
    const int k = ((delta_k % 3) + 3) % 3;
    if (k == 0)
        throw Error(ErrorCode::InadmissibleModuli, "the moduli describe the non-trivial cube roots only");
    if (!(m.t1 < 0 && m.t2 > 1 && m.t4 > 1))
        throw Error(ErrorCode::InadmissibleModuli, "inequalities violated");
    const double scale = std::max({1.0, std::abs(m.t1 * m.t2), std::abs(m.t4)});
    if (std::abs(moduli_residual(m)) > std::sqrt(tol) * scale)
        throw Error(ErrorCode::InadmissibleModuli, "moduli equation violated");
    const cplx delta = cube_root_of_unity(k);
    SCoords c;
    c.t = m.t;
    c.t1 = m.t1;
    c.t2 = m.t2;
    c.sigma = {1, -1, -1};
    c.alpha = delta.imag() * (4 * m.t4 - 1) / 8;
    c.beta = (3 - 4 * m.t4) / 8;
    Triple T;
    try {
        T = triple_from_coords(c, tol);
    } catch (const Error& e) {
        throw Error(ErrorCode::InadmissibleModuli, e.what());
    }
    Mat3 G = std::conj(delta) * product(T);
    auto [p4, p5] = split_two_reflections(G, s5, tol);
    Pentagon P{{T.p1, T.p2, T.p3, p4, p5}, k};
    verify_pentagon(P.points, tol);
    return P;
}

PentagonModuli pentagon_moduli(const Pentagon& P)
{
    const auto& p = P.points;
    return {tance(p[0], p[1]), tance(p[1], p[2]), tance(p[3], p[4]), tau(p[0], p[1], p[2])};
}

bool is_real_pentagon(const Pentagon& P, double tol)
{
    std::vector<Vec3> u;
    for (const Point& p : P.points)
        u.push_back(p.rep / p.rep.norm());
    for (int j = 0; j + 1 < 5; ++j) {
        cplx h = form(u[j + 1], u[j]);
        if (std::abs(h) > 0)
            u[j + 1] *= std::conj(h) / std::abs(h);
    }
    GramMatrix<double> G = gram(u);
    double scale = G.cwiseAbs().maxCoeff();
    return G.imag().cwiseAbs().maxCoeff() <= tol * scale;
}

Pentagon apply_move(const Pentagon& P, const Move& m, double tol)
{
    int j = static_cast<int>(m.pair);
    int i2 = (j + 1) % 5;
    Pentagon out = P;
    auto [a, b] = bend_pair(P.points[j], P.points[i2], m.s, tol);
    out.points[j] = a;
    out.points[i2] = b;
    return out;
}

Pentagon apply_program(const Pentagon& P, const BendProgram& prog, double tol)
{
    Pentagon cur = P;
    for (const Move& m : prog)
        cur = apply_move(cur, m, tol);
    return cur;
}

Pentagon cyclic_relabel(const Pentagon& P, int shift)
{
    Pentagon out = P;
    for (int j = 0; j < 5; ++j)
        out.points[j] = P.points[(((j + shift) % 5) + 5) % 5];
    return out;
}

namespace {

// s with ta(B(s) moving, fixed) = target, B the bending of (a, b)
double solve_bend(const Point& a, const Point& b, const Point& moving, const Point& fixed, double target,
                  double tol)
{
    Bending B = bending(a, b, tol);
    if (B.kind != LineType::Hyperbolic)
        throw Error(ErrorCode::Unreachable, "bending line is not hyperbolic");
    Vec3 z = B.basis_inv * moving.rep;
    double m1 = std::abs(z(0) * form(Vec3(B.basis.col(0)), fixed.rep));
    double m2 = std::abs(z(1) * form(Vec3(B.basis.col(1)), fixed.rep));
    if (m1 == 0 || m2 == 0)
        throw Error(ErrorCode::Unreachable, "degenerate profile");
    const double a_ = B.rate;
    const double s_star = std::log(m1 / m2) / (2 * a_);
    const double sg = moving.sign * fixed.sign;
    auto value = [&](double s) { return sg * tance(point(Vec3(B.evaluate(s) * moving.rep)), fixed); };
    const double u = sg * target;
    if (u < value(s_star))
        throw Error(ErrorCode::Unreachable);
    // go to the side holding s = 0 so the move stays short
    const double side = s_star <= 0 ? 1.0 : -1.0;
    double lo = s_star, hi = s_star + side / a_;
    for (int k = 0; k < 200 && value(hi) < u; ++k)
        hi = s_star + 2 * (hi - s_star);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        (value(mid) < u ? lo : hi) = mid;
    }
    return std::abs(value(lo) - u) <= std::abs(value(hi) - u) ? lo : hi;
}

std::array<int, 5> signs_of(const Pentagon& P)
{
    std::array<int, 5> s{};
    for (int j = 0; j < 5; ++j)
        s[j] = P.points[j].sign;
    return s;
}

double max_mismatch(const Mat3& g, const Pentagon& A, const Pentagon& B)
{
    double worst = 0;
    for (int j = 0; j < 5; ++j) {
        Vec3 u = g * A.points[j].rep;
        const Vec3& v = B.points[j].rep;
        cplx c = u.dot(v) / u.squaredNorm();
        worst = std::max(worst, (v - c * u).norm() / v.norm());
    }
    return worst;
}

} // namespace

PentagonConnection connect_pentagons(const Pentagon& A, const Pentagon& B, double tol)
{
    if (A.delta_k != B.delta_k)
        throw Error(ErrorCode::DifferentDelta);
    if (signs_of(A) != signs_of(B))
        throw Error(ErrorCode::IncompatibleSigns);
    auto same = [](double x, double y) { return std::abs(x - y) <= 1e-11 * std::max(1.0, std::abs(y)); };

    PentagonConnection out;
    Pentagon a = A, b = B;
    double tb_move = 0;
    bool bent_b = false;
    const double t4a = tance(a.points[3], a.points[4]), t4b = tance(b.points[3], b.points[4]);
    if (!same(t4a, t4b)) {
        if (t4a < t4b) {
            double s = solve_bend(a.points[2], a.points[3], a.points[3], a.points[4], t4b, tol);
            out.program.push_back({Pair::P34, s});
            a = apply_move(a, out.program.back(), tol);
        } else {
            tb_move = solve_bend(b.points[2], b.points[3], b.points[3], b.points[4], t4a, tol);
            b = apply_move(b, {Pair::P34, tb_move}, tol);
            bent_b = true;
        }
    }

    Connection c = connect_triples(a.head(), b.head(), tol);
    for (const Move& m : c.program) {
        out.program.push_back(m);
        a = apply_move(a, m, tol);
    }
    const Mat3& g = c.conjugator;

    Bending bb = bending(a.points[3], a.points[4], tol);
    Vec3 z = bb.basis_inv * a.points[3].rep;
    Vec3 zt = bb.basis_inv * Vec3(g.inverse() * b.points[3].rep);
    double r0 = std::abs(z(1) / z(0)), r1 = std::abs(zt(1) / zt(0));
    double s45 = 0;
    if (bb.kind == LineType::Hyperbolic)
        s45 = std::log(r1 / r0) / (2 * bb.rate);
    if (std::abs(s45) > 1e-12) {
        out.program.push_back({Pair::P45, s45});
        a = apply_move(a, out.program.back(), tol);
    }
    if (bent_b) {
        out.program.push_back({Pair::P34, -tb_move});
        a = apply_move(a, out.program.back(), tol);
    }

    out.end = a;
    out.conjugator = g;
    out.point_residual = max_mismatch(g, a, B);
    PentagonModuli ma = pentagon_moduli(a), mb = pentagon_moduli(B);
    out.coord_residual = std::max({std::abs(ma.t1 - mb.t1), std::abs(ma.t2 - mb.t2), std::abs(ma.t4 - mb.t4),
                                   std::abs(ma.t - mb.t)});
    return out;
}

} // namespace chg

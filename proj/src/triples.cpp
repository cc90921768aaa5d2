#include "chg/triples.hpp"

#include <algorithm>
#include <cmath>

namespace chg {

const char* triple_class_name(TripleClass c)
{
    switch (c) {
    case TripleClass::NotRegular: return "NotRegular";
    case TripleClass::Regular: return "Regular";
    case TripleClass::StronglyRegular: return "StronglyRegular";
    case TripleClass::RealStronglyRegular: return "RealStronglyRegular";
    }
    return "?";
}

const char* pair_name(Pair p)
{
    switch (p) {
    case Pair::P12: return "12";
    case Pair::P23: return "23";
    case Pair::P34: return "34";
    case Pair::P45: return "45";
    case Pair::P51: return "51";
    }
    return "?";
}

double surface_residual(const SCoords& c)
{
    return (c.t1 - 1) * (c.t2 - 1) - c.t1 * c.t2 * (c.t - 1) * (c.t - 1) -
           c.alpha * c.alpha / (c.t1 * c.t2) - c.beta;
}

double surface_beta(double t, double t1, double t2, double alpha)
{
    return (t1 - 1) * (t2 - 1) - t1 * t2 * (t - 1) * (t - 1) - alpha * alpha / (t1 * t2);
}

bool admissible_signs(const Signs& s, double alpha, double beta, double tol)
{
    int positives = 0;
    for (int x : s) {
        if (x != 1 && x != -1)
            return false;
        positives += x > 0;
    }
    if (positives > 1)
        return false;
    if (!(s[0] * s[1] * s[2] * beta < -tol))
        return false;
    if (std::abs(alpha) <= tol && positives != 0)
        return false;
    return true;
}

void check_admissible(const SCoords& c, double tol)
{
    if (!admissible_signs(c.sigma, c.alpha, c.beta, tol))
        throw Error(ErrorCode::InadmissibleCoords, "sign pattern");
    const double s12 = c.sigma[0] * c.sigma[1], s23 = c.sigma[1] * c.sigma[2];
    if (!(s12 * c.t1 > 0 && s12 * c.t1 > s12 && s23 * c.t2 > 0 && s23 * c.t2 > s23))
        throw Error(ErrorCode::InadmissibleCoords, "inequalities");
    double scale = 1 + std::abs((c.t1 - 1) * (c.t2 - 1)) + std::abs(c.beta);
    if (std::abs(surface_residual(c)) > std::sqrt(tol) * scale)
        throw Error(ErrorCode::InadmissibleCoords, "surface equation");
}

Mat3 product(const Triple& T) { return reflection(T.p3) * reflection(T.p2) * reflection(T.p1); }

bool on_common_geodesic(const Triple& T, double tol)
{
    Vec3 u1 = T.p1.rep, u2 = T.p2.rep;
    cplx g12 = form(u1, u2);
    if (std::abs(g12) > 0)
        u2 *= g12 / std::abs(g12);
    Eigen::Matrix<cplx, 3, 2> A;
    A.col(0) = u1;
    A.col(1) = u2;
    Eigen::Vector2cd xy = A.colPivHouseholderQr().solve(T.p3.rep);
    if ((A * xy - T.p3.rep).norm() > std::sqrt(tol) * T.p3.rep.norm())
        return false;
    cplx x = xy(0), y = xy(1);
    return std::abs(std::imag(y * std::conj(x))) <= std::sqrt(tol) * std::abs(x) * std::abs(y) + tol;
}

TripleClass classify_triple(const Triple& T, double tol)
{
    int positives = (T.p1.sign > 0) + (T.p2.sign > 0) + (T.p3.sign > 0);
    if (positives > 1)
        return TripleClass::NotRegular;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (same_point(T[i], T[j], tol))
                return TripleClass::NotRegular;
    if (std::abs(tance(T.p1, T.p2)) <= tol || std::abs(tance(T.p2, T.p3)) <= tol)
        return TripleClass::NotRegular;
    if (on_common_geodesic(T, tol))
        return TripleClass::NotRegular;
    double t1 = std::abs(tance(T.p1, T.p2)), t2 = std::abs(tance(T.p2, T.p3));
    double scale = (1 + t1) * (1 + t2);
    double b = beta(T.p1, T.p2, T.p3);
    if (std::abs(b) <= tol * scale)
        return TripleClass::Regular;
    double a = alpha(T.p1, T.p2, T.p3);
    if (std::abs(a) <= tol * scale) {
        if (positives != 0)
            return TripleClass::Regular;
        return TripleClass::RealStronglyRegular;
    }
    return TripleClass::StronglyRegular;
}

Mat3 standard_reps(const Triple& T, double tol)
{
    TripleClass c = classify_triple(T, tol);
    if (c != TripleClass::StronglyRegular && c != TripleClass::RealStronglyRegular)
        throw Error(ErrorCode::NotStronglyRegular);
    Vec3 u1 = T.p1.rep, u2 = T.p2.rep, u3 = T.p3.rep;
    for (Vec3* u : {&u1, &u2, &u3})
        *u /= std::sqrt(std::abs(self_product(*u)));
    cplx g12 = form(u1, u2);
    u2 *= g12 / std::abs(g12);
    cplx g23 = form(u2, u3);
    u3 *= g23 / std::abs(g23);
    Mat3 M;
    M.col(0) = u1;
    M.col(1) = u2;
    M.col(2) = u3;
    return M;
}

Gram standard_gram(const Triple& T, double tol)
{
    Mat3 M = standard_reps(T, tol);
    return gram<double>({M.col(0), M.col(1), M.col(2)});
}

SCoords s_coords(const Triple& T, double tol)
{
    Gram G = standard_gram(T, tol);
    SCoords c;
    c.sigma = {T.p1.sign, T.p2.sign, T.p3.sign};
    double s1 = G(0, 0).real(), s2 = G(1, 1).real(), s3 = G(2, 2).real();
    c.t1 = std::norm(G(0, 1)) / (s1 * s2);
    c.t2 = std::norm(G(1, 2)) / (s2 * s3);
    c.t = std::real(G(0, 2) * G(1, 1) / (G(0, 1) * G(1, 2)));
    c.alpha = std::imag(G(0, 1) * G(1, 2) * G(2, 0)) / (s1 * s2 * s3);
    c.beta = std::real(G.determinant()) / (s1 * s2 * s3);
    return c;
}

namespace {

Gram coords_gram(const Signs& s, double t, double t1, double t2, double alpha)
{
    double g12 = std::sqrt(s[0] * s[1] * t1);
    double g23 = std::sqrt(s[1] * s[2] * t2);
    cplx g31 = g12 * g23 / s[1] * t + cplx(0, 1) * (s[0] * s[1] * s[2] / (g12 * g23)) * alpha;
    Gram G(3, 3);
    G << s[0], g12, std::conj(g31),
         g12, s[1], g23,
         g31, g23, s[2];
    return G;
}

Triple triple_from_gram(const Gram& G, double tol)
{
    auto vs = realize_gram_vectors<double>(G, tol);
    return Triple{point(vs[0]), point(vs[1]), point(vs[2])};
}

} // namespace

Triple triple_from_coords(const SCoords& c, double tol)
{
    check_admissible(c, tol);
    Gram G = coords_gram(c.sigma, c.t, c.t1, c.t2, c.alpha);
    try {
        Triple T = triple_from_gram(G, tol);
        for (int j = 0; j < 3; ++j)
            if (T[j].sign != c.sigma[j])
                throw Error(ErrorCode::InadmissibleCoords, "realized signs differ");
        return T;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IncompatibleInertia || e.code() == ErrorCode::IsotropicVector)
            throw Error(ErrorCode::InadmissibleCoords, e.what());
        throw;
    }
}

Gram decomposition_gram(double alpha, double beta, const Signs& sigma, double g, int root_sign)
{
    double t1 = sigma[0] * sigma[1] * g * g;
    double t2 = sigma[1] * sigma[2] * g * g;
    double rhs = ((t1 - 1) * (t2 - 1) - alpha * alpha / (t1 * t2) - beta) / (t1 * t2);
    double t = 1 + root_sign * std::sqrt(std::max(rhs, 0.0));
    return coords_gram(sigma, t, t1, t2, alpha);
}

namespace {

double reflection_scale(const Triple& T)
{
    double c = 1;
    for (int j = 0; j < 3; ++j)
        c *= reflection(T[j]).norm();
    return c;
}

} // namespace

Decomposition decompose_detailed(const Mat3& F, std::optional<Signs> preferred, double tol)
{
    cplx tr = F.trace();
    double fn = std::max(1.0, F.norm());
    if (std::abs(tr + 1.0) <= tol * fn)
        throw Error(ErrorCode::TraceMinusOne);
    if (!is_regular(F))
        throw Error(ErrorCode::NotRegular);
    const double alpha = tr.imag() / 8;
    const double beta = (tr.real() + 1) / 4;

    std::vector<Signs> patterns;
    if (preferred)
        patterns.push_back(*preferred);
    patterns.push_back(beta <= 0 ? Signs{-1, 1, -1} : Signs{-1, -1, -1});
    patterns.push_back({1, -1, -1});
    patterns.push_back({-1, -1, 1});
    patterns.push_back({-1, 1, -1});
    patterns.push_back({-1, -1, -1});

    std::vector<Signs> tried;
    ErrorCode last = ErrorCode::NotConjugate;
    for (const Signs& s : patterns) {
        if (std::find(tried.begin(), tried.end(), s) != tried.end())
            continue;
        tried.push_back(s);
        if (s[0] * s[1] * s[2] * beta > tol)
            continue;
        auto rhs_of = [&](double t1, double t2) {
            return ((t1 - 1) * (t2 - 1) - alpha * alpha / (t1 * t2) - beta) / (t1 * t2);
        };
        std::optional<Decomposition> best;
        double best_scale = 0;
        auto attempt = [&](double t1, double t2, int root) {
            double q = rhs_of(t1, t2);
            if (q < 0)
                return;
            try {
                Gram G = coords_gram(s, 1 + root * std::sqrt(q), t1, t2, alpha);
                Triple raw = triple_from_gram(G, tol);
                for (int j = 0; j < 3; ++j)
                    if (raw[j].sign != s[j])
                        return;
                Mat3 h = conjugator(product(raw), F, tol);
                Triple out{point(Vec3(h * raw.p1.rep)), point(Vec3(h * raw.p2.rep)), point(Vec3(h * raw.p3.rep))};
                if (classify_triple(out, tol) == TripleClass::NotRegular)
                    return;
                double res = reflection_product_residual({out.p1.rep, out.p2.rep, out.p3.rep}, F) / fn;
                if (res > std::sqrt(tol))
                    return;
                double sc = reflection_scale(out);
                if (!best || sc < best_scale) {
                    best = Decomposition{out, G, s, root, res};
                    best_scale = sc;
                }
            } catch (const Error& e) {
                last = e.code();
            }
        };
        const double s12 = s[0] * s[1], s23 = s[1] * s[2];
        double g = 2;
        while (rhs_of(s12 * g * g, s23 * g * g) < 0 && g < std::ldexp(1.0, 20))
            g *= 2;
        for (int root : {1, -1})
            attempt(s12 * g * g, s23 * g * g, root);
        // poorly conditioned: scan the surface for a triple closer to the origin
        if (!best || best_scale > 1e2 * fn) {
            for (double a1 = 1.0 / 32; a1 <= 64; a1 *= 1.5)
                for (double a2 = 1.0 / 32; a2 <= 64; a2 *= 1.5)
                    for (int root : {1, -1})
                        attempt(s12 > 0 ? 1 + a1 : -a1, s23 > 0 ? 1 + a2 : -a2, root);
        }
        if (best)
            return *best;
    }
    throw Error(last == ErrorCode::NotRegular ? ErrorCode::NotRegular : ErrorCode::NotConjugate,
                "no sign pattern yields a conjugate product");
}

Triple decompose_three_reflections(const Mat3& F, double tol) { return decompose_detailed(F, std::nullopt, tol).triple; }

Triple apply_move(const Triple& T, const Move& m, double tol)
{
    Triple out = T;
    if (m.pair == Pair::P12) {
        auto [a, b] = bend_pair(T.p1, T.p2, m.s, tol);
        out.p1 = a;
        out.p2 = b;
    } else if (m.pair == Pair::P23) {
        auto [a, b] = bend_pair(T.p2, T.p3, m.s, tol);
        out.p2 = a;
        out.p3 = b;
    } else {
        throw Error(ErrorCode::InvalidInput, "triples only bend the pairs 12 and 23");
    }
    return out;
}

Triple apply_program(const Triple& T, const BendProgram& prog, double tol)
{
    Triple cur = T;
    for (const Move& m : prog)
        cur = apply_move(cur, m, tol);
    return cur;
}

namespace {

struct LineData {
    Bending b;
    cplx A1, A2;   // <B(s) moving point, fixed point> = e^{-as} A1 + e^{as} A2
    double signs;  // sign product of the moving and fixed points
};

LineData line_data(const Triple& T, Pair pair, double tol)
{
    LineData d;
    const Point *q, *x;
    if (pair == Pair::P12) {
        d.b = bending(T.p1, T.p2, tol);
        q = &T.p2;
        x = &T.p3;
    } else if (pair == Pair::P23) {
        d.b = bending(T.p2, T.p3, tol);
        q = &T.p2;
        x = &T.p1;
    } else {
        throw Error(ErrorCode::InvalidInput, "triples only bend the pairs 12 and 23");
    }
    if (d.b.kind != LineType::Hyperbolic)
        throw Error(ErrorCode::LeavesAdmissibleRegion, "bending line is not hyperbolic");
    Vec3 z = d.b.basis_inv * q->rep;
    d.A1 = z(0) * form(Vec3(d.b.basis.col(0)), x->rep);
    d.A2 = z(1) * form(Vec3(d.b.basis.col(1)), x->rep);
    d.signs = static_cast<double>(q->sign * x->sign);
    return d;
}

LineSolution solve_line(const Triple& T, Pair pair, double target, int sheet, double tol)
{
    LineData d = line_data(T, pair, tol);
    const double a = d.b.rate;
    const double m1 = std::abs(d.A1), m2 = std::abs(d.A2);
    if (m1 == 0 || m2 == 0)
        throw Error(ErrorCode::Unreachable, "degenerate line");
    const double s_star = std::log(m1 / m2) / (2 * a);
    auto value = [&](double s) { return line_coordinate(T, pair, s, tol) * d.signs; };
    const double umin = value(s_star);
    const double u = target * d.signs;
    const double scale = std::max(1.0, std::abs(u));
    if (u < umin - std::sqrt(tol) * scale)
        throw Error(ErrorCode::Unreachable);
    if (u <= umin + tol * scale)
        return {s_star, true};
    int side = 0;
    for (int dir : {1, -1}) {
        double h = 1.0 / a;
        if (line_sheet(T, pair, s_star + dir * h, tol) == sheet) {
            side = dir;
            break;
        }
    }
    if (side == 0)
        throw Error(ErrorCode::Unreachable, "sheet not found");
    double lo = s_star, hi = s_star + side / a;
    for (int k = 0; k < 200 && value(hi) < u; ++k)
        hi = s_star + 2 * (hi - s_star);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (value(mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    double s = std::abs(value(lo) - u) <= std::abs(value(hi) - u) ? lo : hi;
    return {s, false};
}

} // namespace

double line_coordinate(const Triple& T, Pair pair, double s, double tol)
{
    Triple B = apply_move(T, {pair, s}, tol);
    return pair == Pair::P12 ? tance(B.p2, B.p3) : tance(B.p1, B.p2);
}

int line_sheet(const Triple& T, Pair pair, double s, double tol)
{
    Triple B = apply_move(T, {pair, s}, tol);
    return tau(B.p1, B.p2, B.p3, tol) >= 1.0 ? 1 : -1;
}

LineMinimum line_minimum(const Triple& T, Pair pair, double tol)
{
    LineData d = line_data(T, pair, tol);
    double s_star = std::log(std::abs(d.A1) / std::abs(d.A2)) / (2 * d.b.rate);
    return {s_star, line_coordinate(T, pair, s_star, tol)};
}

LineSolution vertical_line(const Triple& T, double target_t2, int sheet, double tol)
{
    return solve_line(T, Pair::P12, target_t2, sheet, tol);
}

LineSolution horizontal_line(const Triple& T, double target_t1, int sheet, double tol)
{
    return solve_line(T, Pair::P23, target_t1, sheet, tol);
}

double projective_mismatch(const Mat3& g, const Triple& A, const Triple& B)
{
    double worst = 0;
    for (int j = 0; j < 3; ++j) {
        Vec3 u = g * A[j].rep;
        const Vec3& v = B[j].rep;
        cplx c = u.dot(v) / u.squaredNorm();
        worst = std::max(worst, (v - c * u).norm() / v.norm());
    }
    return worst;
}

Connection connect_triples(const Triple& A, const Triple& B, double tol)
{
    SCoords ca = s_coords(A, tol), cb = s_coords(B, tol);
    auto close = [&](double x, double y) { return std::abs(x - y) <= 1e-7 * std::max(1.0, std::abs(x) + std::abs(y)); };
    if (ca.sigma != cb.sigma || !close(ca.alpha, cb.alpha) || !close(ca.beta, cb.beta))
        throw Error(ErrorCode::IncompatibleInvariants);
    const int sheet_b = cb.t >= 1 ? 1 : -1;
    const double s12 = ca.sigma[0] * ca.sigma[1], s23 = ca.sigma[1] * ca.sigma[2];
    auto same = [&](double x, double y) { return std::abs(x - y) <= 1e-11 * std::max(1.0, std::abs(y)); };

    Connection out;
    Triple cur = A;
    auto hmin = [&](const Triple& T) { return s12 * line_minimum(T, Pair::P23, tol).value; };
    const double u1b = s12 * cb.t1;

    if (!same(ca.t1, cb.t1) && u1b < hmin(cur)) {
        double u2 = std::max(s23 * ca.t2, s23 * cb.t2);
        bool found = false;
        for (int k = 0; k < 60 && !found; ++k, u2 *= 2) {
            LineSolution ls = vertical_line(A, s23 * u2, sheet_b, tol);
            Triple cand = apply_move(A, {Pair::P12, ls.s}, tol);
            if (u1b >= hmin(cand)) {
                out.program.push_back({Pair::P12, ls.s});
                cur = cand;
                found = true;
            }
        }
        if (!found)
            throw Error(ErrorCode::Unreachable, "horizontal line never reaches the target");
    }
    if (!same(s_coords(cur, tol).t1, cb.t1)) {
        LineSolution ls = horizontal_line(cur, cb.t1, sheet_b, tol);
        out.program.push_back({Pair::P23, ls.s});
        cur = apply_move(cur, out.program.back(), tol);
    }
    SCoords cc = s_coords(cur, tol);
    if (!same(cc.t2, cb.t2) || (cc.t >= 1 ? 1 : -1) != sheet_b) {
        LineSolution ls = vertical_line(cur, cb.t2, sheet_b, tol);
        out.program.push_back({Pair::P12, ls.s});
        cur = apply_move(cur, out.program.back(), tol);
        cc = s_coords(cur, tol);
    }
    out.end = cur;
    out.coord_residual = std::max({std::abs(cc.t - cb.t), std::abs(cc.t1 - cb.t1), std::abs(cc.t2 - cb.t2)});
    Mat3 MB = standard_reps(B, tol), MA = standard_reps(cur, tol);
    out.conjugator = to_special(Mat3(MB * MA.inverse()));
    out.point_residual = projective_mismatch(out.conjugator, cur, B);
    return out;
}

double tangent_ef_residual(const Triple& T, const TripleTangent& tg)
{
    (void)T;
    Mat3 R2 = reflection(tg.t[1].base);
    Mat3 E = -hat(tg.t[2]) + hat(tg.t[1]) + R2 * hat(tg.t[0]) * R2;
    Eigen::JacobiSVD<Mat3> svd(E);
    return svd.singularValues()(0);
}

SphericalFixture spherical_fixture(cplx z, double tol)
{
    Gram G(3, 3);
    G << 0.0, 0.5, 1.0,
         0.5, 0.0, std::conj(z),
         1.0, z, 1.0;
    auto vs = realize_gram_vectors<double>(G, tol);
    SphericalFixture f;
    f.z = z;
    f.v1 = vs[0];
    f.v2 = vs[1];
    f.p3 = point(vs[2]);
    f.p1 = point(Vec3(2.0 * f.v1 - 0.5 * f.v2));
    f.p2 = point(Vec3(f.v1 + f.v2));
    f.p1b = point(Vec3(f.v1 - f.v2));
    f.p2b = point(Vec3(0.5 * f.v1 + 2.0 * f.v2));
    return f;
}

} // namespace chg

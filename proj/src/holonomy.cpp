#include "chg/holonomy.hpp"

#include <cmath>
#include <limits>

namespace chg {

namespace {

struct Frame {
    Vec3 p[3];
    Gram g;
};

Frame frame_of(const Triple& T, double tol)
{
    Frame f;
    Mat3 M = standard_reps(T, tol);
    for (int j = 0; j < 3; ++j)
        f.p[j] = M.col(j);
    f.g = gram(std::vector<Vec3>{f.p[0], f.p[1], f.p[2]});
    return f;
}

Frame frame_of(const TripleTangent& q)
{
    Frame f;
    for (int j = 0; j < 3; ++j)
        f.p[j] = q.t[j].base;
    f.g = gram(std::vector<Vec3>{f.p[0], f.p[1], f.p[2]});
    return f;
}

std::array<TripleTangent, 2> fields(const Frame& f)
{
    const Vec3 *p = f.p;
    const Gram& g = f.g;
    const Vec3 z = Vec3::Zero();
    TripleTangent b1{{Tangent{p[0], Vec3(p[0] / g(0, 0) - p[1] / g(1, 0))},
                      Tangent{p[1], Vec3(p[0] / g(0, 1) - p[1] / g(1, 1))}, Tangent{p[2], z}}};
    TripleTangent b2{{Tangent{p[0], z}, Tangent{p[1], Vec3(p[1] / g(1, 1) - p[2] / g(2, 1))},
                      Tangent{p[2], Vec3(p[1] / g(1, 2) - p[2] / g(2, 2))}}};
    return {b1, b2};
}

cplx tau_of(const Gram& g) { return g(0, 2) * g(1, 1) / (g(0, 1) * g(1, 2)); }

} // namespace

std::array<TripleTangent, 2> b_fields(const Triple& T, double tol) { return fields(frame_of(T, tol)); }

TripleTangent b_commutator(const Triple& T, double tol)
{
    Frame f = frame_of(T, tol);
    const Vec3 *p = f.p;
    const Gram& g = f.g;
    cplx tc = tau_of(g);
    cplx I(0, 1);
    return TripleTangent{{Tangent{p[0], Vec3(std::conj(tc) * (p[1] / g(1, 0) - p[2] / g(2, 0)))},
                          Tangent{p[1], Vec3((2.0 - tc) * p[0] / g(0, 1) + 2.0 * I * tc.imag() * p[1] / g(1, 1) +
                                             (std::conj(tc) - 2.0) * p[2] / g(2, 1))},
                          Tangent{p[2], Vec3(tc * (p[0] / g(0, 2) - p[1] / g(1, 2)))}}};
}

VerticalDecomposition vertical_part(const TripleTangent& q, double tol)
{
    (void)tol;
    Frame f = frame_of(q);
    auto b = fields(f);
    Mat3 P;
    for (int j = 0; j < 3; ++j)
        P.col(j) = f.p[j];
    Mat3 Pi = P.inverse();
    const cplx I(0, 1);
    auto lie_of = [&](const Eigen::Matrix<double, 5, 1>& x) {
        Mat3 M;
        for (int j = 0; j < 3; ++j)
            M.col(j) = f.g(j, j) * (x(0) * b[0].t[j].v + x(1) * b[1].t[j].v + q.t[j].v) - I * x(2 + j) * f.p[j];
        return Mat3(M * Pi);
    };
    auto res = [&](const Eigen::Matrix<double, 5, 1>& x) {
        Mat3 L = lie_of(x);
        Mat3 r = L + form_adjoint(L);
        Eigen::Matrix<double, 20, 1> out;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                out(3 * i + j) = r(i, j).real();
                out(9 + 3 * i + j) = r(i, j).imag();
            }
        out(18) = L.trace().real();
        out(19) = L.trace().imag();
        return out;
    };
    Eigen::Matrix<double, 5, 1> zero = Eigen::Matrix<double, 5, 1>::Zero();
    Eigen::Matrix<double, 20, 1> r0 = res(zero);
    Eigen::Matrix<double, 20, 5> A;
    for (int k = 0; k < 5; ++k) {
        Eigen::Matrix<double, 5, 1> e = zero;
        e(k) = 1;
        A.col(k) = res(e) - r0;
    }
    Eigen::Matrix<double, 5, 1> x = A.colPivHouseholderQr().solve(Eigen::Matrix<double, 20, 1>(-r0));
    VerticalDecomposition v;
    v.c1 = -x(0);
    v.c2 = -x(1);
    v.d1 = x(2);
    v.d2 = x(3);
    v.d3 = x(4);
    v.a12 = v.d1 - v.d2;
    v.a23 = v.d2 - v.d3;
    v.a31 = v.d3 - v.d1;
    v.lie = lie_of(x);
    v.residual = res(x).norm() / std::max(1.0, v.lie.norm());
    return v;
}

namespace {

void check_off_ramification(const Triple& T, double tol)
{
    double t = s_coords(T, tol).t;
    if (std::abs(t - 1) <= std::sqrt(tol))
        throw Error(ErrorCode::OnRamification);
}

} // namespace

Vec3 omega_commutator(const Triple& T, double tol)
{
    check_off_ramification(T, tol);
    Frame f = frame_of(T, tol);
    return vertical_part(b_commutator(T, tol), tol).lie * f.p[0];
}

Vec3 omega_closed_form(const Triple& T, double tol)
{
    check_off_ramification(T, tol);
    Frame f = frame_of(T, tol);
    SCoords c = s_coords(T, tol);
    const Vec3* p = f.p;
    const Gram& g = f.g;
    cplx tc = tau_of(g);
    const double t1 = c.t1, t2 = c.t2, t = tc.real(), al = c.alpha, be = c.beta;
    const double den = t1 * t1 * t2 * t2 * (t - 1);
    const cplx I(0, 1);
    return g(0, 0) * ((1 - be - t2) * t1 * t2 - 2 * al * al) / den * (p[0] / g(0, 0) - p[1] / g(1, 0)) +
           g(0, 0) * std::conj(tc) * (p[1] / g(1, 0) - p[2] / g(2, 0)) +
           I * al * (1 - be - 3 * t2 + 2 * t1 * t2) / (3 * den) * p[0];
}

OmegaPairings omega_pairings(const Triple& T, double tol)
{
    Frame f = frame_of(T, tol);
    SCoords c = s_coords(T, tol);
    const double t1 = c.t1, t2 = c.t2, t = c.t, al = c.alpha, be = c.beta;
    const double den = t1 * t1 * t2 * t2 * (t - 1);
    Vec3 w = omega_commutator(T, tol);
    Vec3 u3 = polar_vector(f.p[0], polar_vector(f.p[1], f.p[2]));
    Vec3 u2 = polar_vector(f.p[0], u3);
    cplx b = form(f.p[1], u2) / f.g(1, 0);
    const double g11 = f.g(0, 0).real();
    OmegaPairings out;
    out.with_u2 = form(w, u2);
    out.with_u2_expected = (2 * al * al - (1 - be - t2) * t1 * t2) / den * g11 * b;
    out.with_p1 = form(w, f.p[0]);
    out.with_p1_expected = cplx(0, al * (1 - be - 3 * t2 + 2 * t1 * t2) / (3 * den) * g11);
    return out;
}

double rectangle_area(const Triple& T, double ds1, double ds2, double tol)
{
    SCoords c = s_coords(T, tol);
    double e1 = ds1 / (2 * c.t2 * (c.t - 1));
    double e2 = ds2 / (2 * c.t1 * (1 - c.t));
    return e1 * e2;
}

Rectangle rectangle_holonomy(const Triple& T, double ds1, double ds2, double tol)
{
    Rectangle out;
    out.end = T;
    if (ds1 == 0 || ds2 == 0)
        return out;
    SCoords c = s_coords(T, tol);
    const int sheet = c.t >= 1 ? 1 : -1;
    Triple cur = T;
    auto leg = [&](Pair pair, double target) {
        LineSolution ls;
        try {
            ls = pair == Pair::P12 ? vertical_line(cur, target, sheet, tol) : horizontal_line(cur, target, sheet, tol);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Unreachable)
                throw Error(ErrorCode::LeavesAdmissibleRegion, "rectangle leaves the admissible region");
            throw;
        }
        if (ls.on_ramification)
            throw Error(ErrorCode::OnRamification, "rectangle touches the ramification curve");
        out.legs.push_back({pair, ls.s});
        cur = apply_move(cur, out.legs.back(), tol);
        if (classify_triple(cur, tol) != classify_triple(T, tol))
            throw Error(ErrorCode::LeavesAdmissibleRegion, "rectangle leaves the admissible region");
    };
    leg(Pair::P12, c.t2 + ds1);
    leg(Pair::P23, c.t1 + ds2);
    leg(Pair::P12, c.t2);
    leg(Pair::P23, c.t1);
    SCoords e = s_coords(cur, tol);
    out.end = cur;
    out.closure = std::max({std::abs(e.t - c.t), std::abs(e.t1 - c.t1), std::abs(e.t2 - c.t2)});
    Mat3 MT = standard_reps(T, tol), ME = standard_reps(cur, tol);
    out.g = reduce_mod_center(to_special(Mat3(MT * ME.inverse())));
    return out;
}

std::pair<std::array<double, 2>, double> centralizer_coords(const Mat3& g, const std::array<Mat3, 2>& basis)
{
    Mat3 X = logm(g);
    Eigen::Matrix<double, 18, 2> A;
    Eigen::Matrix<double, 18, 1> y;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r = 3 * i + j;
            for (int k = 0; k < 2; ++k) {
                A(r, k) = basis[k](i, j).real();
                A(r + 9, k) = basis[k](i, j).imag();
            }
            y(r) = X(i, j).real();
            y(r + 9) = X(i, j).imag();
        }
    Eigen::Vector2d x = A.colPivHouseholderQr().solve(y);
    double resid = (A * x - y).norm();
    return {{x(0), x(1)}, resid};
}

double real_plane_defect(const Mat3& g, const Triple& T, double tol)
{
    Mat3 P = standard_reps(T, tol);
    Mat3 C = P.inverse() * g * P;
    cplx ph(0, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(C(i, j)) > std::abs(ph))
                ph = C(i, j);
    C *= std::abs(ph) / ph;
    return C.imag().norm() / C.norm();
}

HolonomyVerdict holonomy_dimension(const Triple& T, int n_samples, double ds, Rng& rng, double tol)
{
    HolonomyVerdict v;
    Mat3 F = product(T);
    auto basis = centralizer_basis(F);
    if (ds == 0 || n_samples <= 0) {
        v.conclusive = true;
        v.gap = std::numeric_limits<double>::infinity();
        return v;
    }
    SCoords c0 = s_coords(T, tol);
    const int sheet = c0.t >= 1 ? 1 : -1;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution coin(0.5);

    auto sample = [&](int count) {
        int made = 0;
        for (int attempt = 0; made < count && attempt < 50 * count; ++attempt) {
            Triple base = T;
            if (!v.elements.empty() || attempt > 0) {
                try {
                    double target = c0.t2 * std::exp(0.3 * u(rng));
                    LineSolution ls = vertical_line(T, target, sheet, tol);
                    if (ls.on_ramification)
                        continue;
                    base = apply_move(T, {Pair::P12, ls.s}, tol);
                    SCoords cb = s_coords(base, tol);
                    double t1t = cb.t1 * std::exp(0.3 * u(rng));
                    LineSolution lh = horizontal_line(base, t1t, sheet, tol);
                    if (lh.on_ramification)
                        continue;
                    base = apply_move(base, {Pair::P23, lh.s}, tol);
                } catch (const Error&) {
                    continue;
                }
            }
            SCoords cb = s_coords(base, tol);
            if (std::abs(cb.t - 1) < 0.05)
                continue;
            double d1 = (coin(rng) ? 1 : -1) * ds * std::abs(cb.t2);
            double d2 = (coin(rng) ? 1 : -1) * ds * std::abs(cb.t1);
            Rectangle r;
            try {
                r = rectangle_holonomy(base, d1, d2, tol);
            } catch (const Error&) {
                continue;
            }
            auto [x, resid] = centralizer_coords(r.g, basis);
            v.coords.push_back(x);
            v.elements.push_back(r.g);
            v.noise = std::max(v.noise, resid);
            ++made;
        }
    };

    int want = n_samples;
    for (int round = 0; round < 4; ++round) {
        sample(want - static_cast<int>(v.coords.size()));
        const int n = static_cast<int>(v.coords.size());
        if (n == 0)
            throw Error(ErrorCode::LeavesAdmissibleRegion, "no rectangle fits at this base point");
        Eigen::MatrixXd X(n, 2);
        for (int i = 0; i < n; ++i)
            X.row(i) << v.coords[i][0], v.coords[i][1];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
        Eigen::VectorXd s = svd.singularValues();
        v.singular_values.assign(s.data(), s.data() + s.size());
        const double s1 = s.size() > 0 ? s(0) : 0;
        const double s2 = s.size() > 1 ? s(1) : 0;
        const double noise = std::max(v.noise, 1e-300);
        if (s1 <= noise) {
            v.dimension = 0;
            v.gap = std::numeric_limits<double>::infinity();
        } else if (s2 > 1e-5 * s1) {
            v.dimension = 2;
            v.gap = s2 / noise;
        } else {
            v.dimension = 1;
            v.gap = s1 / std::max(s2, noise);
        }
        v.conclusive = v.gap >= 1e3;
        if (v.conclusive)
            break;
        want *= 2;
    }
    return v;
}

} // namespace chg

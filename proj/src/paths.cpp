#include "chg/paths.hpp"

#include <cmath>

namespace chg {

namespace {

double projective_angle(const Point& a, const Point& b)
{
    double ta = std::abs(tance(a, b));
    if (ta <= 1.0)
        return std::acos(std::sqrt(ta));
    return std::acosh(std::sqrt(ta));
}

Vec3 normalize_self(const Vec3& v)
{
    return v / std::sqrt(std::abs(self_product(v)));
}

} // namespace

std::vector<Vec3> normalized_lift(const PathSample& path, double max_angle)
{
    const size_t n = path.points.size();
    if (n == 0)
        return {};
    if (path.params.size() != n)
        throw Error(ErrorCode::InvalidInput, "params and points differ in length");
    for (size_t k = 1; k < n; ++k)
        if (!(path.params[k] > path.params[k - 1]))
            throw Error(ErrorCode::InvalidInput, "params must increase strictly");
    const int sigma = path.points[0].sign;
    std::vector<Vec3> out;
    out.reserve(n);
    out.push_back(normalize_self(path.points[0].rep));
    for (size_t k = 1; k < n; ++k) {
        if (path.points[k].sign != sigma)
            throw Error(ErrorCode::SignChange);
        if (projective_angle(path.points[k], path.points[k - 1]) > max_angle)
            throw Error(ErrorCode::StepTooLarge);
        Vec3 c = normalize_self(path.points[k].rep);
        cplx h = double(sigma) * form(c, out.back());
        out.push_back(c * (std::abs(h) / h));
    }
    return out;
}

Mat3 hat(const Tangent& t)
{
    Mat3 j = J();
    return t.v * (j * t.base).adjoint() - t.base * (j * t.v).adjoint();
}

std::vector<Mat3> follow_path(const PathSample& path, const Mat3& F0)
{
    auto lift = normalized_lift(path);
    std::vector<Mat3> out;
    out.reserve(lift.size());
    if (lift.empty())
        return out;
    const double sigma = path.points[0].sign;
    const Mat3 I = Mat3::Identity();
    Mat3 F = F0;
    out.push_back(F);
    for (size_t k = 0; k + 1 < lift.size(); ++k) {
        double ds = path.params[k + 1] - path.params[k];
        Vec3 mid = normalize_self(Vec3(0.5 * (lift[k] + lift[k + 1])));
        Vec3 vel = (lift[k + 1] - lift[k]) / ds;
        vel = project_orthogonal(mid, vel);
        Mat3 step = expm(ds * sigma * hat(Tangent{mid, vel}));
        F = (step * F).eval();
        Mat3 E = form_adjoint(F) * F - I;
        F = (F * (I - 0.5 * E)).eval();
        F = to_special(F);
        out.push_back(F);
    }
    return out;
}

Mat3 Bending::evaluate(double s) const
{
    Mat3 D = Mat3::Identity();
    const double as = rate * s;
    switch (kind) {
    case LineType::Hyperbolic:
        D(0, 0) = std::exp(-as);
        D(1, 1) = std::exp(as);
        break;
    case LineType::Spherical:
        D(0, 0) = std::cos(as);
        D(0, 1) = -std::sin(as);
        D(1, 0) = std::sin(as);
        D(1, 1) = std::cos(as);
        break;
    case LineType::Euclidean:
        D(1, 0) = -as;
        D(2, 0) = -as * as / 2;
        D(2, 1) = as;
        break;
    }
    return basis * D * basis_inv;
}

Mat3 Bending::generator() const
{
    Mat3 D = Mat3::Zero();
    switch (kind) {
    case LineType::Hyperbolic:
        D(0, 0) = -rate;
        D(1, 1) = rate;
        break;
    case LineType::Spherical:
        D(0, 1) = -rate;
        D(1, 0) = rate;
        break;
    case LineType::Euclidean:
        D(1, 0) = -rate;
        D(2, 1) = rate;
        break;
    }
    return basis * D * basis_inv;
}

Bending bending(const Point& p1, const Point& p2, double tol)
{
    if (same_point(p1, p2, tol))
        throw Error(ErrorCode::EqualPoints);
    const Vec3& u1 = p1.rep;
    const Vec3& w = p2.rep;
    cplx g21 = form(w, u1);
    if (std::abs(g21) <= tol * std::sqrt(u1.squaredNorm() * w.squaredNorm()))
        throw Error(ErrorCode::OrthogonalPoints);
    Bending b;
    b.kind = line_type(p1, p2, tol);
    b.sigma1 = p1.sign;
    b.sigma2 = p2.sign;
    const double s1 = p1.sign;
    const double g11 = self_product(u1);

    if (b.kind == LineType::Hyperbolic) {
        Vec3 perp = normalize_self(Vec3(w - (g21 / g11) * u1));
        cplx x = g21 / g11;
        cplx y = form(w, perp) / self_product(perp);
        cplx r = y / x;
        double rho = std::abs(r);
        Vec3 u = -(r / rho) * perp;
        Vec3 v1 = 0.5 * (u1 + u);
        Vec3 v2 = 0.5 * s1 * (u1 - u);
        b.rate = (p1.sign == p2.sign) ? std::atanh(rho) : std::atanh(1.0 / rho);
        b.basis.col(0) = v1;
        b.basis.col(1) = v2;
        b.basis.col(2) = normalize_self(polar_vector(v1, v2));
    } else if (b.kind == LineType::Spherical) {
        Vec3 perp = normalize_self(Vec3(w - (g21 / g11) * u1));
        cplx x = g21 / g11;
        cplx y = form(w, perp);
        cplx r = y / x;
        perp *= r / std::abs(r);
        b.rate = std::atan(std::abs(r));
        b.basis.col(0) = u1;
        b.basis.col(1) = perp;
        b.basis.col(2) = normalize_self(polar_vector(u1, perp));
    } else {
        cplx x = g21 / g11;
        Vec3 p = w - x * u1;
        p.normalize();
        cplx y = p.dot(w - x * u1);
        cplx r = y / x;
        p *= r / std::abs(r);
        b.rate = std::abs(r);
        Vec3 q = Vec3::Zero();
        double best = -1;
        for (int i = 0; i < 3; ++i) {
            Vec3 e = Vec3::Zero();
            e(i) = 1;
            Vec3 c = project_orthogonal(u1, e);
            double m = std::abs(form(c, p));
            if (m > best) {
                best = m;
                q = c;
            }
        }
        Vec3 b0 = q / form(q, p);
        double mu = -(1.0 + self_product(b0)) / 2.0;
        b.basis.col(0) = b0 + mu * p;
        b.basis.col(1) = u1;
        b.basis.col(2) = p;
    }
    b.basis_inv = b.basis.inverse();
    return b;
}

std::pair<Point, Point> bend_pair(const Point& p1, const Point& p2, double s, double tol)
{
    Mat3 B = bending(p1, p2, tol).evaluate(s);
    return {point(Vec3(B * p1.rep)), point(Vec3(B * p2.rep))};
}

Point orthogonal_partner(const Point& q, const Point& p1, const Point& p2, double tol)
{
    Bending b = bending(p1, p2, tol);
    if (b.kind == LineType::Euclidean)
        throw Error(ErrorCode::EuclideanGeodesic);
    Vec3 z = b.basis_inv * q.rep;
    double zn = z.norm();
    if (std::abs(z(2)) > std::sqrt(tol) * zn)
        throw Error(ErrorCode::NotOnGeodesic);
    if (std::abs(std::imag(z(1) * std::conj(z(0)))) > std::sqrt(tol) * zn * zn)
        throw Error(ErrorCode::NotOnGeodesic);
    Vec3 out;
    if (b.kind == LineType::Hyperbolic)
        out = z(0) * b.basis.col(0) - z(1) * b.basis.col(1);
    else
        out = -z(1) * b.basis.col(0) + z(0) * b.basis.col(1);
    return point(out);
}

double make_hyperbolic(const Point& p1, const Point& p2, const Point& p3, double tol)
{
    LineType L = line_type(p1, p2, tol);
    if (L == LineType::Spherical)
        throw Error(ErrorCode::ExceptionalCase, "the line through the bent pair is spherical");
    Vec3 pol = polar_vector(p1.rep, p2.rep);
    double scale = pol.norm() * p3.rep.norm();
    if (L == LineType::Euclidean && std::abs(form(p3.rep, pol)) <= std::sqrt(tol) * scale)
        throw Error(ErrorCode::ExceptionalCase, "euclidean line containing the third point");
    if (L == LineType::Hyperbolic) {
        double a = std::abs(form(p3.rep, p1.rep)), c = std::abs(form(p3.rep, p2.rep));
        if (std::max(a, c) <= std::sqrt(tol) * p3.rep.norm() * std::max(p1.rep.norm(), p2.rep.norm()))
            throw Error(ErrorCode::ExceptionalCase, "third point polar to the hyperbolic line");
    }
    if (p2.sign != p3.sign || line_type(p2, p3, tol) == LineType::Hyperbolic)
        return 0.0;
    Bending b = bending(p1, p2, tol);
    auto ta = [&](double s) { return tance(point(Vec3(b.evaluate(s) * p2.rep)), p3); };
    double hi = 0;
    for (int k = -1; k < 40 && hi == 0; ++k) {
        double s = std::ldexp(1.0, k);
        for (double cand : {s, -s})
            if (ta(cand) >= 2.0) {
                hi = cand;
                break;
            }
    }
    if (hi == 0)
        throw Error(ErrorCode::ExceptionalCase, "no hyperbolic position found");
    double lo = 0;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (ta(mid) >= 1.5)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace chg

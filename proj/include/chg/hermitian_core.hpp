#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "chg/errors.hpp"

namespace chg {

template <class Real> using Complex = std::complex<Real>;
template <class Real> using Vector3 = Eigen::Matrix<std::complex<Real>, 3, 1>;
template <class Real> using Matrix3 = Eigen::Matrix<std::complex<Real>, 3, 3>;
template <class Real> using GramMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Vec3 = Vector3<double>;
using Mat3 = Matrix3<double>;
using Gram = GramMatrix<double>;
using cplx = std::complex<double>;

inline constexpr double default_tol = 1e-9;

enum class LineType { Hyperbolic, Spherical, Euclidean };

inline const char* line_type_name(LineType t)
{
    switch (t) {
    case LineType::Hyperbolic: return "Hyperbolic";
    case LineType::Spherical: return "Spherical";
    case LineType::Euclidean: return "Euclidean";
    }
    return "?";
}

// A projective point with canonical representative: <rep,rep> = sign and the
// coordinate of largest modulus real and nonnegative.
template <class Real = double> struct BasicPoint {
    Vector3<Real> rep;
    int sign = -1;
};
using Point = BasicPoint<double>;

template <class Real> Matrix3<Real> form_matrix()
{
    Matrix3<Real> J = Matrix3<Real>::Zero();
    J(0, 0) = 1;
    J(1, 1) = 1;
    J(2, 2) = -1;
    return J;
}

template <class Real> Complex<Real> form(const Vector3<Real>& u, const Vector3<Real>& v)
{
    return u(0) * std::conj(v(0)) + u(1) * std::conj(v(1)) - u(2) * std::conj(v(2));
}

template <class Real> Complex<Real> form(const BasicPoint<Real>& p, const BasicPoint<Real>& q)
{
    return form(p.rep, q.rep);
}

template <class Real> const Vector3<Real>& rep_of(const BasicPoint<Real>& p) { return p.rep; }
template <class Real> const Vector3<Real>& rep_of(const Vector3<Real>& v) { return v; }

template <class Real> Vector3<Real> canonical_phase(const Vector3<Real>& v)
{
    Real m = 0;
    for (int i = 0; i < 3; ++i)
        m = std::max(m, std::abs(v(i)));
    if (m == 0)
        return v;
    int k = 0;
    while (std::abs(v(k)) < m * (1 - Real(1e-12)))
        ++k;
    return v * (std::abs(v(k)) / v(k));
}

template <class Real>
BasicPoint<Real> point(const Vector3<Real>& v, Real isotropy_tol = Real(default_tol))
{
    Real self = std::real(form(v, v));
    Real n2 = v.squaredNorm();
    if (!(n2 > 0) || std::abs(self) <= isotropy_tol * n2)
        throw Error(ErrorCode::IsotropicVector);
    BasicPoint<Real> p;
    p.sign = self > 0 ? 1 : -1;
    p.rep = canonical_phase<Real>(v / std::sqrt(std::abs(self)));
    return p;
}

template <class Real> Real self_product(const Vector3<Real>& v) { return std::real(form(v, v)); }

template <class A, class B> auto tance(const A& p1, const B& p2)
{
    const auto& u = rep_of(p1);
    const auto& v = rep_of(p2);
    auto g12 = form(u, v);
    return std::norm(g12) / (self_product(u) * self_product(v));
}

template <class A, class B, class C> auto alpha(const A& p1, const B& p2, const C& p3)
{
    const auto &u = rep_of(p1), &v = rep_of(p2), &w = rep_of(p3);
    auto prod = form(u, v) * form(v, w) * form(w, u);
    return std::imag(prod) / (self_product(u) * self_product(v) * self_product(w));
}

template <class Real> GramMatrix<Real> gram(const std::vector<Vector3<Real>>& vs)
{
    const int n = static_cast<int>(vs.size());
    GramMatrix<Real> G(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            G(j, k) = form(vs[j], vs[k]);
    return G;
}

template <class Real> GramMatrix<Real> gram(const std::vector<BasicPoint<Real>>& ps)
{
    std::vector<Vector3<Real>> vs;
    for (const auto& p : ps)
        vs.push_back(p.rep);
    return gram(vs);
}

template <class A, class B, class C> auto beta(const A& p1, const B& p2, const C& p3)
{
    const auto &u = rep_of(p1), &v = rep_of(p2), &w = rep_of(p3);
    using Real = typename std::decay_t<decltype(u)>::RealScalar;
    GramMatrix<Real> G = gram<Real>({u, v, w});
    return std::real(G.determinant()) / (std::real(G(0, 0)) * std::real(G(1, 1)) * std::real(G(2, 2)));
}

// Complex tau; its real part is the surface coordinate t.
template <class A, class B, class C>
auto tau_complex(const A& p1, const B& p2, const C& p3, double tol = default_tol)
{
    const auto &u = rep_of(p1), &v = rep_of(p2), &w = rep_of(p3);
    auto g12 = form(u, v), g23 = form(v, w), g13 = form(u, w), g22 = form(v, v);
    auto scale = std::sqrt(std::abs(self_product(u) * self_product(v))) *
                 std::sqrt(std::abs(self_product(v) * self_product(w)));
    if (std::abs(g12 * g23) <= tol * scale)
        throw Error(ErrorCode::DegenerateTau);
    return g13 * g22 / (g12 * g23);
}

template <class A, class B, class C>
auto tau(const A& p1, const B& p2, const C& p3, double tol = default_tol)
{
    return std::real(tau_complex(p1, p2, p3, tol));
}

template <class A, class B> bool same_point(const A& p1, const B& p2, double tol = default_tol)
{
    const auto& u = rep_of(p1);
    const auto& v = rep_of(p2);
    auto c = u.dot(v) / u.squaredNorm();
    return (v - c * u).norm() <= tol * v.norm();
}

template <class A, class B> LineType line_type(const A& p1, const B& p2, double tol = default_tol)
{
    if (same_point(p1, p2, tol))
        throw Error(ErrorCode::SamePoint);
    const auto& u = rep_of(p1);
    const auto& v = rep_of(p2);
    auto g11 = self_product(u), g22 = self_product(v);
    auto n12 = std::norm(form(u, v));
    auto det2 = g11 * g22 - n12;
    auto scale = std::max(std::abs(g11 * g22), n12);
    if (det2 < -tol * scale)
        return LineType::Hyperbolic;
    if (det2 > tol * scale)
        return LineType::Spherical;
    return LineType::Euclidean;
}

template <class Real> Vector3<Real> polar_vector(const Vector3<Real>& u, const Vector3<Real>& v)
{
    Vector3<Real> a = u, b = v;
    a(2) = -a(2);
    b(2) = -b(2);
    // Eigen conjugates the complex cross product
    return a.cross(b);
}

template <class A, class B> auto polar_point(const A& p1, const B& p2, double tol = default_tol)
{
    if (line_type(p1, p2, tol) == LineType::Euclidean)
        throw Error(ErrorCode::EuclideanLine);
    const auto& u = rep_of(p1);
    return point(polar_vector(u, rep_of(p2)), static_cast<typename std::decay_t<decltype(u)>::RealScalar>(tol));
}

template <class A, class Real>
Vector3<Real> project_orthogonal(const A& p, const Vector3<Real>& v)
{
    const auto& u = rep_of(p);
    return v - (form(v, u) / form(u, u)) * u;
}

// Vectors v_j (columns of the returned 3 x n matrix) with <v_j,v_k> = G(j,k).
template <class Real>
Eigen::Matrix<Complex<Real>, 3, Eigen::Dynamic> realize_gram(const GramMatrix<Real>& G, double tol = default_tol)
{
    const auto n = G.rows();
    if (G.cols() != n || n == 0)
        throw Error(ErrorCode::InvalidInput, "Gram matrix must be square and nonempty");
    GramMatrix<Real> H = G.conjugate();
    H = (H + H.adjoint()).eval() / Real(2);
    Eigen::SelfAdjointEigenSolver<GramMatrix<Real>> es(H);
    const auto& lam = es.eigenvalues();
    Real scale = lam.cwiseAbs().maxCoeff();
    std::vector<int> pos, neg;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
        if (lam(i) > tol * scale)
            pos.push_back(i);
        else if (lam(i) < -tol * scale)
            neg.push_back(i);
    }
    if (pos.size() > 2 || neg.size() > 1)
        throw Error(ErrorCode::IncompatibleInertia);
    Eigen::Matrix<Complex<Real>, 3, Eigen::Dynamic> M =
        Eigen::Matrix<Complex<Real>, 3, Eigen::Dynamic>::Zero(3, n);
    auto put = [&](int row, int i) {
        Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1> w = es.eigenvectors().col(i);
        Eigen::Index k = 0;
        w.cwiseAbs().maxCoeff(&k);
        w *= std::abs(w(k)) / w(k);
        M.row(row) = std::sqrt(std::abs(lam(i))) * w.adjoint();
    };
    for (size_t r = 0; r < pos.size(); ++r)
        put(static_cast<int>(r), pos[r]);
    if (!neg.empty())
        put(2, neg[0]);
    return M;
}

template <class Real>
std::vector<Vector3<Real>> realize_gram_vectors(const GramMatrix<Real>& G, double tol = default_tol)
{
    auto M = realize_gram<Real>(G, tol);
    std::vector<Vector3<Real>> out;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        out.push_back(M.col(j));
    return out;
}

} // namespace chg

#include "chg/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chg {

namespace {

using RealMat = Eigen::MatrixXd;

Mat3 unpack(const Eigen::VectorXd& x)
{
    Mat3 m;
    for (int i = 0; i < 9; ++i)
        m(i / 3, i % 3) = cplx(x(i), x(9 + i));
    return m;
}

void pack(const Mat3& m, Eigen::VectorXd& out, int offset)
{
    for (int i = 0; i < 9; ++i) {
        out(offset + i) = m(i / 3, i % 3).real();
        out(offset + 9 + i) = m(i / 3, i % 3).imag();
    }
}

template <class Constraint> RealMat constraint_matrix(int rows, Constraint&& f)
{
    RealMat A(rows, 18);
    for (int k = 0; k < 18; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(18);
        e(k) = 1;
        A.col(k) = f(unpack(e));
    }
    return A;
}

Eigen::VectorXd su_constraints(const Mat3& x, int extra, double weight = 1.0)
{
    Eigen::VectorXd r(20 + extra);
    pack(x + form_adjoint(x), r, 0);
    cplx tr = x.trace();
    r(18) = tr.real();
    r(19) = tr.imag();
    r.head(20) *= weight;
    return r;
}

Mat3 sign_fixed(Mat3 m)
{
    double best = 0;
    double sgn = 1;
    for (int i = 0; i < 9; ++i) {
        for (double c : {m(i / 3, i % 3).real(), m(i / 3, i % 3).imag()})
            if (std::abs(c) > best + 1e-12) {
                best = std::abs(c);
                sgn = c < 0 ? -1 : 1;
            }
    }
    return m * sgn;
}

} // namespace

Mat3 J() { return form_matrix<double>(); }

Mat3 form_adjoint(const Mat3& m)
{
    Mat3 j = J();
    return j * m.adjoint() * j;
}

Mat3 reflection(const Vec3& p)
{
    cplx pp = form(p, p);
    return 2.0 * p * (J() * p).adjoint() / pp - Mat3::Identity();
}

double isometry_defect(const Mat3& m)
{
    Mat3 j = J();
    double a = (m.adjoint() * j * m - j).norm();
    double b = std::abs(m.determinant() - 1.0);
    return std::max(a, b);
}

double lie_defect(const Mat3& y) { return std::max((y + form_adjoint(y)).norm(), std::abs(y.trace())); }

cplx trace_formula(const Gram& G)
{
    const int n = static_cast<int>(G.rows());
    for (int i = 0; i < n; ++i)
        if (std::abs(G(i, i)) == 0.0)
            throw Error(ErrorCode::ZeroDiagonal);
    cplx sum = 3.0 - 2.0 * n;
    std::vector<int> idx;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        idx.clear();
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                idx.push_back(i);
        if (idx.size() < 2)
            continue;
        cplx prod = 1;
        double diag = 1;
        for (size_t k = 0; k < idx.size(); ++k) {
            prod *= G(idx[k], idx[(k + 1) % idx.size()]);
            diag *= G(idx[k], idx[k]).real();
        }
        sum += std::pow(-2.0, static_cast<double>(idx.size())) * prod / diag;
    }
    return (n % 2 == 0 ? 1.0 : -1.0) * sum;
}

bool is_regular(const Mat3& F, double eigen_tol)
{
    Eigen::ComplexEigenSolver<Mat3> es(F, false);
    auto lam = es.eigenvalues();
    double nrm = F.norm();
    for (int i = 0; i < 3; ++i) {
        std::vector<int> cluster{i};
        for (int j = 0; j < 3; ++j)
            if (j != i && std::abs(lam(i) - lam(j)) <= eigen_tol * std::max(1.0, std::abs(lam(i))))
                cluster.push_back(j);
        if (cluster.size() < 2)
            continue;
        cplx c = 0;
        for (int k : cluster)
            c += lam(k);
        c /= static_cast<double>(cluster.size());
        Eigen::JacobiSVD<Mat3> svd(F - c * Mat3::Identity());
        auto sv = svd.singularValues();
        int deficiency = 0;
        for (int k = 0; k < 3; ++k)
            if (sv(k) <= std::sqrt(eigen_tol) * nrm * 1e-2)
                ++deficiency;
        if (deficiency >= 2)
            return false;
    }
    return true;
}

double regularity_margin(const Mat3& F)
{
    Eigen::ComplexEigenSolver<Mat3> es(F, false);
    auto lam = es.eigenvalues();
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            m = std::min(m, std::abs(lam(i) - lam(j)));
    return m;
}

std::array<Mat3, 2> centralizer_basis(const Mat3& F, double tol)
{
    double w = 1.0 / std::max(1.0, F.norm());
    RealMat A = constraint_matrix(38, [&](const Mat3& x) {
        Eigen::VectorXd r = su_constraints(x, 18);
        pack(w * (x * F - F * x), r, 20);
        return r;
    });
    Eigen::JacobiSVD<RealMat> svd(A, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    // singular values are sorted descending; the last two span the centralizer
    if (sv(15) <= tol * sv(0))
        throw Error(ErrorCode::NotRegular);
    std::array<Mat3, 2> out;
    for (int k = 0; k < 2; ++k)
        out[k] = sign_fixed(unpack(svd.matrixV().col(16 + k)));
    return out;
}

std::vector<Mat3> stabilizer_basis(const Vec3& q, double tol)
{
    cplx qq = form(q, q);
    Vec3 u = q / std::sqrt(std::abs(qq.real()));
    RealMat A = constraint_matrix(26, [&](const Mat3& x) {
        Eigen::VectorXd r = su_constraints(x, 6);
        Vec3 lq = x * u;
        Vec3 perp = lq - (form(lq, u) / form(u, u)) * u;
        for (int i = 0; i < 3; ++i) {
            r(20 + i) = perp(i).real();
            r(23 + i) = perp(i).imag();
        }
        return r;
    });
    Eigen::JacobiSVD<RealMat> svd(A, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    std::vector<Mat3> out;
    for (int k = 0; k < 18; ++k)
        if (sv(k) <= tol * sv(0))
            out.push_back(unpack(svd.matrixV().col(k)));
    return out;
}

double reflection_product_residual(const std::vector<Vec3>& pts, const Mat3& F)
{
    using LD = long double;
    const Matrix3<LD> j = form_matrix<LD>();
    Matrix3<LD> m = Matrix3<LD>::Identity();
    for (const Vec3& p : pts) {
        Vector3<LD> q = p.cast<Complex<LD>>();
        Matrix3<LD> r = (LD(2) * q * (j * q).adjoint()) / form(q, q) - Matrix3<LD>::Identity();
        m = (r * m).eval();
    }
    return static_cast<double>((m - F.cast<Complex<LD>>()).norm());
}

Mat3 conjugator(const Mat3& F, const Mat3& Fp, double tol)
{
    if (!is_regular(F) || !is_regular(Fp))
        throw Error(ErrorCode::NotRegular);
    cplx trF = F.trace(), trFp = Fp.trace();
    if (std::abs(trF - trFp) > std::sqrt(tol) * std::max(1.0, std::abs(trF)))
        throw Error(ErrorCode::NotConjugate, "traces differ");
    Eigen::ComplexEigenSolver<Mat3> es(F), esp(Fp);
    auto lam = es.eigenvalues();
    auto lamp = esp.eigenvalues();
    Mat3 E = es.eigenvectors();
    Mat3 Ep0 = esp.eigenvectors();

    std::array<int, 3> perm{0, 1, 2}, best = perm;
    double bestd = std::numeric_limits<double>::infinity();
    do {
        double d = 0;
        for (int i = 0; i < 3; ++i)
            d += std::abs(lam(i) - lamp(perm[i]));
        if (d < bestd) {
            bestd = d;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    Mat3 Ep;
    for (int i = 0; i < 3; ++i)
        Ep.col(i) = Ep0.col(best[i]);

    Mat3 j = J();
    Mat3 H = E.adjoint() * j * E;   // H(k,i) = <e_i, e_k>
    Mat3 Hp = Ep.adjoint() * j * Ep;
    const double iso = 1e-7;
    std::array<cplx, 3> c{1.0, 1.0, 1.0};
    std::vector<int> isotropic;
    for (int i = 0; i < 3; ++i) {
        bool a = std::abs(H(i, i)) <= iso, b = std::abs(Hp(i, i)) <= iso;
        if (a != b)
            throw Error(ErrorCode::NotConjugate, "eigenvector isotropy differs");
        if (a) {
            isotropic.push_back(i);
            continue;
        }
        double r = H(i, i).real() / Hp(i, i).real();
        if (r <= 0)
            throw Error(ErrorCode::NotConjugate, "eigenvector sign patterns differ");
        c[i] = std::sqrt(r);
    }
    if (isotropic.size() == 2) {
        int i = isotropic[0], k = isotropic[1];
        if (std::abs(Hp(k, i)) <= iso)
            throw Error(ErrorCode::NotConjugate, "degenerate isotropic pair");
        // c[k] is free up to the centralizer; balance the two isotropic terms
        Mat3 Ei = E.inverse();
        double nk = Ep.col(k).norm() * Ei.row(k).norm();
        double ni = Ep.col(i).norm() * Ei.row(i).norm() * std::abs(H(k, i) / Hp(k, i));
        double r = (nk > 0 && ni > 0) ? std::sqrt(ni / nk) : 1.0;
        c[k] = r;
        c[i] = H(k, i) / (Hp(k, i) * r);
    } else if (!isotropic.empty()) {
        throw Error(ErrorCode::NotConjugate, "unsupported eigenvector configuration");
    }
    Mat3 C = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
        C(i, i) = c[i];
    Mat3 g = to_special(Ep * C * E.inverse());
    Mat3 gi = g.inverse();
    double cond = g.norm() * gi.norm();
    double res = (g * F * gi - Fp).norm() / std::max(1.0, Fp.norm());
    if (res > std::sqrt(tol) * cond)
        throw Error(ErrorCode::NotConjugate, "conjugation residual too large");
    return g;
}

std::pair<Point, Point> split_two_reflections(const Mat3& G, double s, double tol)
{
    cplx tr = G.trace();
    if (std::abs(tr.imag()) > std::sqrt(tol) * std::max(1.0, std::abs(tr)) || tr.real() <= 3.0 + tol)
        throw Error(ErrorCode::NotTwoReflectionProduct);
    Eigen::ComplexEigenSolver<Mat3> es(G);
    auto lam = es.eigenvalues();
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lam(a).real() < lam(b).real(); });
    cplx lo = lam(order[0]), mid = lam(order[1]), hi = lam(order[2]);
    double et = 1e-6;
    if (std::abs(mid - 1.0) > et || std::abs(lo.imag()) > et * std::abs(lo) ||
        std::abs(hi.imag()) > et * std::abs(hi) || !(lo.real() > 0) || !(lo.real() < 1.0) ||
        std::abs(lo * hi - 1.0) > et)
        throw Error(ErrorCode::NotTwoReflectionProduct);
    Vec3 e1 = es.eigenvectors().col(order[1]);
    if (self_product(e1) <= 0)
        throw Error(ErrorCode::NotTwoReflectionProduct);
    Vec3 v1 = es.eigenvectors().col(order[0]);
    Vec3 v2 = es.eigenvectors().col(order[2]);
    cplx h = form(v1, v2);
    if (std::abs(h) <= tol)
        throw Error(ErrorCode::NotTwoReflectionProduct);
    v1 /= 2.0 * h;
    double r = std::sqrt(v2.norm() / v1.norm());
    v1 *= r;
    v2 /= r;
    double a = std::log(hi.real() / lo.real()) / 4.0;
    Vec3 p5 = std::exp(-a * s) * v1 - std::exp(a * s) * v2;
    Vec3 p4 = std::exp(-a * (s + 1)) * v1 - std::exp(a * (s + 1)) * v2;
    Point q4 = point(p4), q5 = point(p5);
    double res = (reflection(q4) * reflection(q5) - G).norm() / std::max(1.0, G.norm());
    if (res > std::sqrt(tol))
        throw Error(ErrorCode::NotTwoReflectionProduct, "split residual too large");
    return {q4, q5};
}

Mat3 expm(const Mat3& a)
{
    double n = a.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (n > 0.5)
        s = static_cast<int>(std::ceil(std::log2(n / 0.5)));
    Mat3 x = a / std::ldexp(1.0, s);
    Mat3 term = Mat3::Identity(), sum = Mat3::Identity();
    for (int k = 1; k <= 20; ++k) {
        term = (term * x / static_cast<double>(k)).eval();
        sum += term;
    }
    for (int k = 0; k < s; ++k)
        sum = (sum * sum).eval();
    return sum;
}

Mat3 logm(const Mat3& g)
{
    Mat3 x = g;
    int k = 0;
    while ((x - Mat3::Identity()).norm() > 0.1 && k < 60) {
        Mat3 y = x, z = Mat3::Identity();
        for (int it = 0; it < 60; ++it) {
            Mat3 yn = 0.5 * (y + z.inverse());
            Mat3 zn = 0.5 * (z + y.inverse());
            bool done = (yn - y).norm() <= 1e-15 * yn.norm();
            y = yn;
            z = zn;
            if (done)
                break;
        }
        x = y;
        ++k;
    }
    Mat3 e = x - Mat3::Identity();
    Mat3 term = e, sum = Mat3::Zero();
    for (int m = 1; m <= 40; ++m) {
        sum += (m % 2 ? 1.0 : -1.0) * term / static_cast<double>(m);
        term = (term * e).eval();
    }
    return std::ldexp(1.0, k) * sum;
}

Mat3 to_special(const Mat3& g)
{
    cplx d = g.determinant();
    return g / std::pow(d, 1.0 / 3.0);
}

cplx cube_root_of_unity(int k) { return std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0); }

int nearest_cube_root_index(cplx z)
{
    int best = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(z - cube_root_of_unity(k)) < std::abs(z - cube_root_of_unity(best)))
            best = k;
    return best;
}

Mat3 reduce_mod_center(const Mat3& g)
{
    Mat3 best = g;
    double bd = (g - Mat3::Identity()).norm();
    for (int k = 1; k < 3; ++k) {
        Mat3 h = cube_root_of_unity(k) * g;
        double d = (h - Mat3::Identity()).norm();
        if (d < bd) {
            bd = d;
            best = h;
        }
    }
    return best;
}

} // namespace chg

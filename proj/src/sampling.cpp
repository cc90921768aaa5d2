#include "chg/sampling.hpp"

#include <cmath>

namespace chg {

Vec3 random_vector(Rng& rng)
{
    std::normal_distribution<double> n;
    Vec3 v;
    for (int i = 0; i < 3; ++i)
        v(i) = cplx(n(rng), n(rng));
    return v;
}

Point random_point(Rng& rng, int sign, double spread)
{
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::Vector2cd z(cplx(n(rng), n(rng)), cplx(n(rng), n(rng)));
    z.normalize();
    double r = std::tanh(spread * std::sqrt(u(rng)));
    if (sign < 0)
        return point(Vec3(r * z(0), r * z(1), 1.0));
    cplx w = r * std::polar(1.0, 2 * M_PI * u(rng));
    return point(Vec3(z(0), z(1), w));
}

Mat3 random_lie(Rng& rng, double scale)
{
    std::normal_distribution<double> n;
    Mat3 x;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            x(i, j) = cplx(n(rng), n(rng));
    Mat3 y = 0.5 * (x - form_adjoint(x));
    y -= (y.trace() / 3.0) * Mat3::Identity();
    return scale * y;
}

Mat3 random_isometry(Rng& rng, double scale) { return to_special(expm(random_lie(rng, scale))); }

const std::array<Signs, 4>& sign_patterns()
{
    static const std::array<Signs, 4> p{Signs{-1, -1, -1}, Signs{1, -1, -1}, Signs{-1, 1, -1}, Signs{-1, -1, 1}};
    return p;
}

std::pair<double, double> random_invariants(Rng& rng, const Signs& s, bool real)
{
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0.2, 2.0);
    double prod = s[0] * s[1] * s[2];
    double beta = -prod * u(rng);
    double alpha = 0;
    if (!real) {
        alpha = 0.2 + std::abs(n(rng));
        if (std::bernoulli_distribution(0.5)(rng))
            alpha = -alpha;
    }
    return {alpha, beta};
}

SCoords random_coords(Rng& rng, const Signs& s, double alpha, double beta)
{
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double s12 = s[0] * s[1], s23 = s[1] * s[2];
    for (int attempt = 0; attempt < 100000; ++attempt) {
        double a1 = std::exp(0.8 * n(rng)), a2 = std::exp(0.8 * n(rng));
        double t1 = s12 > 0 ? 1 + a1 : -a1;
        double t2 = s23 > 0 ? 1 + a2 : -a2;
        double num = (t1 - 1) * (t2 - 1) - alpha * alpha / (t1 * t2) - beta;
        double q = num / (t1 * t2);
        if (q < 1e-3)
            continue;
        double t = 1 + (u(rng) < 0.5 ? 1 : -1) * std::sqrt(q);
        SCoords c{t, t1, t2, s, alpha, beta};
        try {
            triple_from_coords(c);
            return c;
        } catch (const Error&) {
        }
    }
    throw Error(ErrorCode::InadmissibleCoords, "no admissible coordinates found");
}

Triple random_strongly_regular(Rng& rng, const Signs& sigma, bool real)
{
    auto [a, b] = random_invariants(rng, sigma, real);
    Triple T = triple_from_coords(random_coords(rng, sigma, a, b));
    Mat3 h = random_isometry(rng, 0.5);
    return Triple{point(Vec3(h * T.p1.rep)), point(Vec3(h * T.p2.rep)), point(Vec3(h * T.p3.rep))};
}

} // namespace chg

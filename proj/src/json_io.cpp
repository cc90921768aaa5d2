#include "chg/json_io.hpp"

namespace chg {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw Error(ErrorCode::InvalidInput, what);
}

} // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    require(j.is_array() && j.size() == 2, "complex scalar must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Vec3& v) { return json::array({to_json(v(0)), to_json(v(1)), to_json(v(2))}); }

Vec3 vector_from_json(const json& j)
{
    require(j.is_array() && j.size() == 3, "vector must have three entries");
    return Vec3(complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2]));
}

json to_json(const Point& p) { return {{"rep", to_json(p.rep)}, {"sign", p.sign}}; }

Point point_from_json(const json& j)
{
    require(j.is_object() && j.contains("rep"), "point needs a rep");
    Point p = point(vector_from_json(j["rep"]));
    if (j.contains("sign"))
        require(j["sign"].get<int>() == p.sign, "stored sign disagrees with the representative");
    return p;
}

json gram_to_json(const Gram& G)
{
    json e = json::array();
    for (int i = 0; i < G.rows(); ++i)
        for (int k = 0; k < G.cols(); ++k)
            e.push_back(to_json(G(i, k)));
    return {{"n", G.rows()}, {"entries", e}};
}

Gram gram_from_json(const json& j)
{
    int n = j.at("n").get<int>();
    const json& e = j.at("entries");
    require(n > 0 && e.is_array() && static_cast<int>(e.size()) == n * n, "gram entries must be n*n");
    Gram G(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            G(i, k) = complex_from_json(e[i * n + k]);
    return G;
}

json isometry_to_json(const Mat3& m)
{
    json e = json::array();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            e.push_back(to_json(m(i, k)));
    return {{"m", e}};
}

Mat3 isometry_from_json(const json& j)
{
    const json& e = j.at("m");
    require(e.is_array() && e.size() == 9, "isometry needs 9 entries");
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            m(i, k) = complex_from_json(e[3 * i + k]);
    return m;
}

json cube_root_to_json(int k) { return {{"k", ((k % 3) + 3) % 3}}; }

int cube_root_from_json(const json& j)
{
    int k = j.at("k").get<int>();
    require(k >= 0 && k <= 2, "cube root index must be 0, 1 or 2");
    return k;
}

json to_json(const Triple& T) { return {{"points", json::array({to_json(T.p1), to_json(T.p2), to_json(T.p3)})}}; }

Triple triple_from_json(const json& j)
{
    const json& p = j.is_array() ? j : j.at("points");
    require(p.is_array() && p.size() == 3, "triple needs three points");
    return Triple{point_from_json(p[0]), point_from_json(p[1]), point_from_json(p[2])};
}

json to_json(const SCoords& c)
{
    return {{"t", c.t},         {"t1", c.t1},       {"t2", c.t2},
            {"sigma", c.sigma}, {"alpha", c.alpha}, {"beta", c.beta}};
}

SCoords scoords_from_json(const json& j)
{
    SCoords c;
    c.t = j.at("t").get<double>();
    c.t1 = j.at("t1").get<double>();
    c.t2 = j.at("t2").get<double>();
    auto s = j.at("sigma").get<std::vector<int>>();
    require(s.size() == 3, "sigma needs three signs");
    c.sigma = {s[0], s[1], s[2]};
    c.alpha = j.at("alpha").get<double>();
    c.beta = j.at("beta").get<double>();
    return c;
}

json to_json(const BendProgram& prog)
{
    json out = json::array();
    for (const Move& m : prog)
        out.push_back({{"pair", pair_name(m.pair)}, {"s", m.s}});
    return out;
}

BendProgram program_from_json(const json& j)
{
    require(j.is_array(), "program must be an array");
    BendProgram prog;
    for (const json& m : j) {
        std::string name = m.at("pair").get<std::string>();
        bool found = false;
        for (Pair p : {Pair::P12, Pair::P23, Pair::P34, Pair::P45, Pair::P51})
            if (name == pair_name(p)) {
                prog.push_back({p, m.at("s").get<double>()});
                found = true;
            }
        require(found, "unknown pair");
    }
    return prog;
}

json to_json(const Pentagon& P)
{
    json pts = json::array();
    for (const Point& p : P.points)
        pts.push_back(to_json(p));
    return {{"delta", cube_root_to_json(P.delta_k)}, {"points", pts}};
}

Pentagon pentagon_from_json(const json& j)
{
    const json& pts = j.at("points");
    require(pts.is_array() && pts.size() == 5, "pentagon needs five points");
    Pentagon P;
    P.delta_k = cube_root_from_json(j.at("delta"));
    for (int i = 0; i < 5; ++i)
        P.points[i] = point_from_json(pts[i]);
    return P;
}

json to_json(const PathSample& s)
{
    json pts = json::array();
    for (const Point& p : s.points)
        pts.push_back(to_json(p));
    return {{"params", s.params}, {"points", pts}};
}

PathSample path_from_json(const json& j)
{
    PathSample s;
    s.params = j.at("params").get<std::vector<double>>();
    for (const json& p : j.at("points"))
        s.points.push_back(point_from_json(p));
    return s;
}

} // namespace chg

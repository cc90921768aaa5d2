#include <doctest.h>

#include "chg/errors.hpp"
#include "chg/json_io.hpp"
#include "chg/sampling.hpp"

using namespace chg;

TEST_CASE("scalars and vectors")
{
    cplx z(0.1, -1.0 / 3);
    json j = json::parse(to_json(z).dump());
    CHECK(complex_from_json(j) == z);
    CHECK(complex_from_json(json(2.5)) == cplx(2.5, 0));
    CHECK_THROWS_AS(complex_from_json(json::array({1, 2, 3})), Error);

    Vec3 v(cplx(1, 2), cplx(-0.5, 1e-17), cplx(3, 0));
    CHECK(vector_from_json(json::parse(to_json(v).dump())) == v);
}

TEST_CASE("points keep their sign")
{
    Rng rng(31);
    Point p = random_point(rng, 1);
    json j = to_json(p);
    Point q = point_from_json(json::parse(j.dump()));
    CHECK(q.sign == 1);
    CHECK(same_point(p, q));
    CHECK((q.rep - p.rep).norm() < 1e-15 * p.rep.norm());
    j["sign"] = -1;
    CHECK_THROWS_AS(point_from_json(j), Error);
}

TEST_CASE("compound objects")
{
    Rng rng(32);
    Triple T = random_strongly_regular(rng, {-1, 1, -1});
    Triple U = triple_from_json(json::parse(to_json(T).dump()));
    for (int i = 0; i < 3; ++i)
        CHECK(same_point(T[i], U[i]));

    Gram G = standard_gram(T);
    CHECK((gram_from_json(gram_to_json(G)) - G).norm() == 0);

    Mat3 m = random_isometry(rng);
    CHECK(isometry_from_json(json::parse(isometry_to_json(m).dump())) == m);

    CHECK(cube_root_from_json(cube_root_to_json(-1)) == 2);
    CHECK_THROWS_AS(cube_root_from_json(json{{"k", 3}}), Error);

    SCoords c = s_coords(T);
    SCoords d = scoords_from_json(json::parse(to_json(c).dump()));
    CHECK(d.t == c.t);
    CHECK(d.alpha == c.alpha);
    CHECK(d.sigma == c.sigma);

    BendProgram prog{{Pair::P12, 0.25}, {Pair::P51, -1.5}};
    BendProgram back = program_from_json(json::parse(to_json(prog).dump()));
    REQUIRE(back.size() == 2);
    CHECK(back[1].pair == Pair::P51);
    CHECK(back[1].s == -1.5);
    CHECK_THROWS_AS(program_from_json(json::array({{{"pair", "13"}, {"s", 0}}})), Error);

    PathSample s{{0, 0.5}, {random_point(rng, -1), random_point(rng, -1)}};
    PathSample t = path_from_json(json::parse(to_json(s).dump()));
    CHECK(t.params == s.params);
    CHECK(same_point(t.points[1], s.points[1]));
}

TEST_CASE("pentagon documents")
{
    json doc = json::parse(R"({"delta": {"k": 1}, "points": [
        {"rep": [[0,0],[0,0],[1,0]]}, {"rep": [[0.1,0],[0,0],[1,0]]}, {"rep": [[0,0],[0.2,0],[1,0]]},
        {"rep": [[0,0.1],[0,0],[1,0]]}, {"rep": [[0,0],[0,0.3],[1,0]]}]})");
    Pentagon P = pentagon_from_json(doc);
    CHECK(P.delta_k == 1);
    CHECK(P.points[4].sign == -1);
    doc["points"].erase(0);
    CHECK_THROWS_AS(pentagon_from_json(doc), Error);
}

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chg/errors.hpp"
#include "chg/holonomy.hpp"
#include "chg/json_io.hpp"
#include "chg/pentagons.hpp"
#include "chg/sampling.hpp"

using namespace chg;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double tol = default_tol;
    unsigned long long seed = 0;
    int steps = 10000;
    std::string out;
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f)
        throw UsageError("cannot write " + o.out);
    f << text;
}

void emit_json(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

std::vector<Point> read_points(const std::string& path)
{
    json j = read_json(path);
    const json& arr = j.is_object() && j.contains("points") ? j["points"] : j;
    if (!arr.is_array())
        throw Error(ErrorCode::InvalidInput, "expected an array of points");
    std::vector<Point> pts;
    for (const json& p : arr)
        pts.push_back(point_from_json(p));
    return pts;
}

Point read_point(const std::string& path)
{
    json j = read_json(path);
    if (j.is_object() && j.contains("rep"))
        return point_from_json(j);
    auto pts = read_points(path);
    if (pts.size() != 1)
        throw Error(ErrorCode::InvalidInput, "expected a single point");
    return pts[0];
}

Pair pair_of(const std::string& s)
{
    static const char* names[] = {"12", "23", "34", "45", "51"};
    for (int i = 0; i < 5; ++i)
        if (s == names[i])
            return static_cast<Pair>(i);
    throw UsageError("unknown pair " + s);
}

json verdict_json(const HolonomyVerdict& v)
{
    return {{"dimension", v.dimension},
            {"conclusive", v.conclusive},
            {"gap", v.gap},
            {"noise", v.noise},
            {"singular_values", v.singular_values},
            {"samples", v.coords.size()}};
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    if (const char* env = std::getenv("CHG_TOL")) {
        try {
            o.tol = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "error: CHG_TOL is not a number\n";
            return 2;
        }
    }

    CLI::App app{"Complex hyperbolic reflection groups: triples, bendings, pentagons"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", o.tol, "numerical tolerance (env CHG_TOL)")->capture_default_str();
    app.add_option("--seed", o.seed, "seed for randomized subcommands")->capture_default_str();
    app.add_option("--steps", o.steps, "integration steps for path following")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "output file (default stdout)");

    std::function<void()> action;

    auto* inv = app.add_subcommand("invariants", "s-coordinates and class of a triple; JSON");
    std::string inv_file;
    inv->add_option("--points", inv_file, "triple JSON")->required();
    inv->callback([&] {
        action = [&] {
            auto pts = read_points(inv_file);
            if (pts.size() != 3)
                throw Error(ErrorCode::InvalidInput, "a triple has three points");
            Triple T{pts[0], pts[1], pts[2]};
            json j = to_json(s_coords(T, o.tol));
            j["class"] = triple_class_name(classify_triple(T, o.tol));
            emit_json(o, j);
        };
    });

    auto* refl = app.add_subcommand("reflect", "reflection matrix of a point, optionally applied to another; JSON");
    std::string refl_file, refl_apply;
    refl->add_option("--point", refl_file, "point JSON")->required();
    refl->add_option("--apply", refl_apply, "point JSON to reflect");
    refl->callback([&] {
        action = [&] {
            Point p = read_point(refl_file);
            Mat3 R = reflection(p);
            json j = {{"reflection", isometry_to_json(R)},
                      {"involution_defect", (R * R - Mat3::Identity()).norm()},
                      {"isometry_defect", isometry_defect(R)}};
            if (!refl_apply.empty())
                j["image"] = to_json(point(Vec3(R * read_point(refl_apply).rep)));
            emit_json(o, j);
        };
    });

    auto* bend = app.add_subcommand("bend", "bend a pair of points by s; JSON with the closed form and a path-following check");
    std::string bend_file;
    double bend_s = 0;
    bend->add_option("--pair", bend_file, "JSON with two points")->required();
    bend->add_option("--s", bend_s, "bending parameter")->required();
    bend->callback([&] {
        action = [&] {
            auto pts = read_points(bend_file);
            if (pts.size() != 2)
                throw Error(ErrorCode::InvalidInput, "a pair has two points");
            Bending b = bending(pts[0], pts[1], o.tol);
            auto [q1, q2] = bend_pair(pts[0], pts[1], bend_s, o.tol);
            Mat3 before = reflection(pts[1]) * reflection(pts[0]);
            Mat3 after = reflection(q2) * reflection(q1);

            PathSample path;
            for (int i = 0; i <= o.steps; ++i) {
                double u = bend_s * i / o.steps;
                path.params.push_back(u);
                path.points.push_back(point(Vec3(b.evaluate(u) * pts[0].rep)));
            }
            auto F = follow_path(path, Mat3::Identity());
            Mat3 exact = b.evaluate(bend_s);
            double follow = (reduce_mod_center(F.back()) - reduce_mod_center(exact)).norm();

            emit_json(o, {{"line_type", line_type_name(b.kind)},
                          {"rate", b.rate},
                          {"s", bend_s},
                          {"points", json::array({to_json(q1), to_json(q2)})},
                          {"bending", isometry_to_json(exact)},
                          {"product_residual", (after - before).norm()},
                          {"follow_residual", follow},
                          {"steps", o.steps}});
        };
    });

    auto* dec = app.add_subcommand("decompose", "write an isometry as a product of three reflections; JSON");
    std::string dec_file;
    dec->add_option("--isometry", dec_file, "isometry JSON")->required();
    dec->callback([&] {
        action = [&] {
            Mat3 F = isometry_from_json(read_json(dec_file));
            Decomposition d = decompose_detailed(F, std::nullopt, o.tol);
            json j = to_json(d.triple);
            j["class"] = triple_class_name(classify_triple(d.triple, o.tol));
            j["residual"] = reflection_product_residual({d.triple.p1.rep, d.triple.p2.rep, d.triple.p3.rep}, F);
            emit_json(o, j);
        };
    });

    auto* pen = app.add_subcommand("pentagon", "construct, verify and connect pentagons");
    pen->require_subcommand(1);
    auto* pnew = pen->add_subcommand("new", "construct a pentagon; JSON");
    int pnew_k = 0;
    std::string pnew_p4, pnew_p5;
    std::vector<double> pnew_moduli;
    pnew->add_option("--delta", pnew_k, "cube root index 0, 1 or 2")->required()->check(CLI::Range(0, 2));
    auto* op4 = pnew->add_option("--p4", pnew_p4, "negative point JSON");
    auto* op5 = pnew->add_option("--p5", pnew_p5, "negative point JSON");
    auto* omod = pnew->add_option("--moduli", pnew_moduli, "t1,t2,t4,t,s5")->delimiter(',')->expected(5);
    op4->needs(op5);
    op5->needs(op4);
    omod->excludes(op4);
    omod->excludes(op5);
    pnew->callback([&] {
        action = [&] {
            Pentagon P;
            if (!pnew_moduli.empty()) {
                PentagonModuli m{pnew_moduli[0], pnew_moduli[1], pnew_moduli[2], pnew_moduli[3]};
                P = pentagon_from_moduli(m, pnew_k, pnew_moduli[4], o.tol);
            } else if (!pnew_p4.empty()) {
                P = build_pentagon(pnew_k, read_point(pnew_p4), read_point(pnew_p5), o.tol);
            } else {
                Rng rng(o.seed);
                Point p4 = random_point(rng, -1), p5 = random_point(rng, -1);
                P = build_pentagon(pnew_k, p4, p5, o.tol);
            }
            json j = to_json(P);
            j["residual"] = pentagon_residual(P.points);
            emit_json(o, j);
        };
    });
    auto* pver = pen->add_subcommand("verify", "check the pentagon relation; JSON");
    std::string pver_file;
    pver->add_option("file", pver_file, "pentagon JSON")->required();
    pver->callback([&] {
        action = [&] {
            Pentagon P = pentagon_from_json(read_json(pver_file));
            int k = verify_pentagon(P.points, o.tol);
            if (k != P.delta_k)
                throw Error(ErrorCode::DifferentDelta, "stored delta disagrees with the product");
            json j = {{"delta", cube_root_to_json(k)},
                      {"residual", pentagon_residual(P.points)},
                      {"trace_relation", relation_residual(P, o.tol)},
                      {"real", is_real_pentagon(P)}};
            std::vector<int> signs;
            for (const Point& p : P.points)
                signs.push_back(p.sign);
            j["signs"] = signs;
            if (k != 0) {
                PentagonModuli m = pentagon_moduli(P);
                j["moduli"] = {{"t1", m.t1}, {"t2", m.t2}, {"t4", m.t4}, {"t", m.t}};
            }
            emit_json(o, j);
        };
    });
    auto* pcon = pen->add_subcommand("connect", "bending program between two pentagons; JSON");
    std::string pcon_a, pcon_b;
    pcon->add_option("a", pcon_a, "start pentagon JSON")->required();
    pcon->add_option("b", pcon_b, "target pentagon JSON")->required();
    pcon->callback([&] {
        action = [&] {
            Pentagon A = pentagon_from_json(read_json(pcon_a));
            Pentagon B = pentagon_from_json(read_json(pcon_b));
            PentagonConnection c = connect_pentagons(A, B, o.tol);
            emit_json(o, {{"program", to_json(c.program)},
                          {"conjugator", isometry_to_json(c.conjugator)},
                          {"end", to_json(c.end)},
                          {"coord_residual", c.coord_residual},
                          {"point_residual", c.point_residual}});
        };
    });

    auto* hol = app.add_subcommand("holonomy", "rectangle holonomy of a triple");
    hol->require_subcommand(1);
    auto* probe = hol->add_subcommand(
        "probe",
        "CSV columns: index,c1,c2 (centralizer coordinates of log g per rectangle); verdict JSON to --verdict or stderr");
    std::string probe_file, probe_verdict;
    int probe_n = 20;
    double probe_ds = 1e-3;
    probe->add_option("--triple", probe_file, "triple JSON")->required();
    probe->add_option("--samples", probe_n, "number of rectangles")->capture_default_str()->check(CLI::PositiveNumber);
    probe->add_option("--ds", probe_ds, "rectangle side")->capture_default_str()->check(CLI::PositiveNumber);
    probe->add_option("--verdict", probe_verdict, "verdict JSON file");
    probe->callback([&] {
        action = [&] {
            auto pts = read_points(probe_file);
            if (pts.size() != 3)
                throw Error(ErrorCode::InvalidInput, "a triple has three points");
            Rng rng(o.seed);
            HolonomyVerdict v = holonomy_dimension(Triple{pts[0], pts[1], pts[2]}, probe_n, probe_ds, rng, o.tol);
            std::ostringstream csv;
            csv << "index,c1,c2\n";
            for (std::size_t i = 0; i < v.coords.size(); ++i)
                csv << i << ',' << num(v.coords[i][0]) << ',' << num(v.coords[i][1]) << '\n';
            emit(o, csv.str());
            std::string vj = verdict_json(v).dump(2) + "\n";
            if (probe_verdict.empty()) {
                std::cerr << vj;
            } else {
                std::ofstream f(probe_verdict);
                if (!f)
                    throw UsageError("cannot write " + probe_verdict);
                f << vj;
            }
        };
    });

    auto* fix = app.add_subcommand("fixture", "built-in configurations");
    fix->require_subcommand(1);
    auto* sph = fix->add_subcommand("spherical-line", "the z = 1/8 configuration and its line types; JSON");
    double sph_z = 0.125;
    sph->add_option("--z", sph_z, "real parameter z")->capture_default_str();
    sph->callback([&] {
        action = [&] {
            SphericalFixture f = spherical_fixture(sph_z, o.tol);
            emit_json(o, {{"z", to_json(f.z)},
                          {"points", {{"p1", to_json(f.p1)}, {"p2", to_json(f.p2)}, {"p3", to_json(f.p3)},
                                      {"p1_bent", to_json(f.p1b)}, {"p2_bent", to_json(f.p2b)}}},
                          {"ta_p1_p2", tance(f.p1, f.p2)},
                          {"ta_p2_p3", tance(f.p2, f.p3)},
                          {"ta_p2_bent_p3", tance(f.p2b, f.p3)},
                          {"line_p2_p3", line_type_name(line_type(f.p2, f.p3, o.tol))},
                          {"line_p2_bent_p3", line_type_name(line_type(f.p2b, f.p3, o.tol))}});
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!action)
            throw UsageError("no command given");
        action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "InvalidInput: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

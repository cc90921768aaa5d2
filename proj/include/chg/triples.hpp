#pragma once

#include <array>
#include <optional>
#include <vector>

#include "chg/paths.hpp"

namespace chg {

struct Triple {
    Point p1, p2, p3;

    const Point& operator[](int i) const { return i == 0 ? p1 : (i == 1 ? p2 : p3); }
    Point& operator[](int i) { return i == 0 ? p1 : (i == 1 ? p2 : p3); }
};

using Signs = std::array<int, 3>;

enum class TripleClass { NotRegular, Regular, StronglyRegular, RealStronglyRegular };
const char* triple_class_name(TripleClass c);

struct SCoords {
    double t = 1, t1 = 0, t2 = 0;
    Signs sigma{-1, -1, -1};
    double alpha = 0, beta = 0;
};

// (t1-1)(t2-1) - t1 t2 (t-1)^2 - alpha^2/(t1 t2) - beta
double surface_residual(const SCoords& c);
// solves the surface equation for beta
double surface_beta(double t, double t1, double t2, double alpha);
bool admissible_signs(const Signs& sigma, double alpha, double beta, double tol = default_tol);
void check_admissible(const SCoords& c, double tol = default_tol);

Mat3 product(const Triple& T);
bool on_common_geodesic(const Triple& T, double tol = default_tol);
TripleClass classify_triple(const Triple& T, double tol = default_tol);

// columns: representatives with standard Gram (g_jj = sigma_j, g12 > 0, g23 > 0)
Mat3 standard_reps(const Triple& T, double tol = default_tol);
Gram standard_gram(const Triple& T, double tol = default_tol);
SCoords s_coords(const Triple& T, double tol = default_tol);
Triple triple_from_coords(const SCoords& c, double tol = default_tol);

struct Decomposition {
    Triple triple;
    Gram gram;          // Gram matrix of the raw construction before conjugation
    Signs sigma{};
    int root_sign = 1;  // t = 1 + root_sign * sqrt(...)
    double residual = 0;
};

Gram decomposition_gram(double alpha, double beta, const Signs& sigma, double g, int root_sign);
Decomposition decompose_detailed(const Mat3& F, std::optional<Signs> preferred = std::nullopt,
                                 double tol = default_tol);
Triple decompose_three_reflections(const Mat3& F, double tol = default_tol);

enum class Pair { P12, P23, P34, P45, P51 };
const char* pair_name(Pair p);

struct Move {
    Pair pair;
    double s;
};
using BendProgram = std::vector<Move>;

Triple apply_move(const Triple& T, const Move& m, double tol = default_tol);
Triple apply_program(const Triple& T, const BendProgram& prog, double tol = default_tol);

// The coordinate moved by a bend: t2 for P12 (vertical), t1 for P23 (horizontal).
double line_coordinate(const Triple& T, Pair pair, double s, double tol = default_tol);
// sign of t - 1 after the bend
int line_sheet(const Triple& T, Pair pair, double s, double tol = default_tol);

struct LineMinimum {
    double s;      // parameter of the unique point on the ramification curve
    double value;  // coordinate value there
};
LineMinimum line_minimum(const Triple& T, Pair pair, double tol = default_tol);

struct LineSolution {
    double s = 0;
    bool on_ramification = false;
};

// Bending parameter reaching the target coordinate on the given sheet (sign of t - 1).
LineSolution vertical_line(const Triple& T, double target_t2, int sheet, double tol = default_tol);
LineSolution horizontal_line(const Triple& T, double target_t1, int sheet, double tol = default_tol);

struct Connection {
    BendProgram program;
    Mat3 conjugator;   // g with g A' = B
    Triple end;        // A'
    double coord_residual = 0;
    double point_residual = 0;
};

Connection connect_triples(const Triple& A, const Triple& B, double tol = default_tol);

// max_j projective distance between g a_j and b_j
double projective_mismatch(const Mat3& g, const Triple& A, const Triple& B);

struct TripleTangent {
    std::array<Tangent, 3> t;
};

double tangent_ef_residual(const Triple& T, const TripleTangent& tg);

// Isotropic v1, v2 and positive p3 with Gram [[0, 1/2, 1], [1/2, 0, conj z], [1, z, 1]];
// p1 = 2v1 - v2/2, p2 = v1 + v2 and their bent partners p1b = v1 - v2, p2b = v1/2 + 2v2.
struct SphericalFixture {
    cplx z;
    Vec3 v1, v2;
    Point p1, p2, p3, p1b, p2b;
};
SphericalFixture spherical_fixture(cplx z = 0.125, double tol = default_tol);

} // namespace chg

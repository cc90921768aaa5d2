#pragma once

#include <array>
#include <vector>

#include "chg/sampling.hpp"
#include "chg/triples.hpp"

namespace chg {

// tangents at the standard representatives of T
std::array<TripleTangent, 2> b_fields(const Triple& T, double tol = default_tol);
TripleTangent b_commutator(const Triple& T, double tol = default_tol);

// q = c1 b1 + c2 b2 + vertical, the vertical part being x -> lie x - i d_j x at p_j
struct VerticalDecomposition {
    double c1 = 0, c2 = 0;
    double d1 = 0, d2 = 0, d3 = 0;
    double a12 = 0, a23 = 0, a31 = 0;
    Mat3 lie = Mat3::Zero();
    double residual = 0;
};

VerticalDecomposition vertical_part(const TripleTangent& q, double tol = default_tol);

// lie element of the vertical part of [b1, b2], applied to the standard p1
Vec3 omega_commutator(const Triple& T, double tol = default_tol);
// the same vector from the closed-form expression in the coordinates
Vec3 omega_closed_form(const Triple& T, double tol = default_tol);

struct OmegaPairings {
    cplx with_u2, with_u2_expected;
    cplx with_p1, with_p1_expected;
};
OmegaPairings omega_pairings(const Triple& T, double tol = default_tol);

struct Rectangle {
    Mat3 g = Mat3::Identity();  // g T_end = T
    Triple end;
    BendProgram legs;
    double closure = 0;         // coordinate mismatch between the end and T
};

// vertical by ds1 in t2, horizontal by ds2 in t1, then back
Rectangle rectangle_holonomy(const Triple& T, double ds1, double ds2, double tol = default_tol);
// area in flow time of the rectangle with sides ds1, ds2 at T
double rectangle_area(const Triple& T, double ds1, double ds2, double tol = default_tol);

// coordinates of log g in the centralizer basis and the part of log g outside it
std::pair<std::array<double, 2>, double> centralizer_coords(const Mat3& g, const std::array<Mat3, 2>& basis);

// distance of g from preserving the real plane spanned by the standard reps of T
double real_plane_defect(const Mat3& g, const Triple& T, double tol = default_tol);

struct HolonomyVerdict {
    int dimension = 0;
    bool conclusive = false;
    double gap = 0;
    double noise = 0;
    std::vector<double> singular_values;
    std::vector<std::array<double, 2>> coords;
    std::vector<Mat3> elements;
};

HolonomyVerdict holonomy_dimension(const Triple& T, int n_samples, double ds, Rng& rng, double tol = default_tol);

} // namespace chg

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "chg/hermitian_core.hpp"

namespace chg {

Mat3 J();
Mat3 form_adjoint(const Mat3& m);

Mat3 reflection(const Vec3& p);
inline Mat3 reflection(const Point& p) { return reflection(p.rep); }

// ||R(p_n)...R(p_1) - F||, accumulated in extended precision
double reflection_product_residual(const std::vector<Vec3>& pts, const Mat3& F);

// max(||m* J m - J||, |det m - 1|)
double isometry_defect(const Mat3& m);
// max(||y + y*||, |tr y|), * the form adjoint
double lie_defect(const Mat3& y);

cplx trace_formula(const Gram& G);

bool is_regular(const Mat3& F, double eigen_tol = 1e-7);
// distance between the closest pair of eigenvalues
double regularity_margin(const Mat3& F);

std::array<Mat3, 2> centralizer_basis(const Mat3& F, double tol = 1e-7);
// real basis of the algebra elements fixing the point projectively
std::vector<Mat3> stabilizer_basis(const Vec3& q, double tol = 1e-9);

Mat3 conjugator(const Mat3& F, const Mat3& Fp, double tol = default_tol);

// (p4, p5) with R(p4) R(p5) = G
std::pair<Point, Point> split_two_reflections(const Mat3& G, double s_param = 0.0, double tol = default_tol);

Mat3 expm(const Mat3& a);
Mat3 logm(const Mat3& g);
Mat3 to_special(const Mat3& g);
// g times the cube root of unity bringing it closest to the identity
Mat3 reduce_mod_center(const Mat3& g);

cplx cube_root_of_unity(int k);
int nearest_cube_root_index(cplx z);

} // namespace chg

#pragma once

#include <vector>

#include "chg/isometry.hpp"

namespace chg {

struct PathSample {
    std::vector<double> params;
    std::vector<Point> points;
};

// The rank-one map x -> <x,base> v.
struct Tangent {
    Vec3 base;
    Vec3 v;
};

std::vector<Vec3> normalized_lift(const PathSample& path, double max_angle = 0.2);

Mat3 hat(const Tangent& t);

std::vector<Mat3> follow_path(const PathSample& path, const Mat3& F0);

struct Bending {
    LineType kind = LineType::Hyperbolic;
    Mat3 basis;      // adapted basis, columns
    Mat3 basis_inv;
    double rate = 0;
    int sigma1 = -1, sigma2 = -1;

    Mat3 evaluate(double s) const;
    // the one-parameter generator: evaluate(s) = exp(s * generator())
    Mat3 generator() const;
};

Bending bending(const Point& p1, const Point& p2, double tol = default_tol);

std::pair<Point, Point> bend_pair(const Point& p1, const Point& p2, double s, double tol = default_tol);

Point orthogonal_partner(const Point& q, const Point& p1, const Point& p2, double tol = default_tol);

// bending parameter s with L(B(s)p2, p3) hyperbolic
double make_hyperbolic(const Point& p1, const Point& p2, const Point& p3, double tol = default_tol);

} // namespace chg

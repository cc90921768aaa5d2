#pragma once

#include <array>

#include "chg/triples.hpp"

namespace chg {

struct Pentagon {
    std::array<Point, 5> points;
    int delta_k = 0;  // delta = exp(2 pi i k / 3)

    cplx delta() const { return cube_root_of_unity(delta_k); }
    Triple head() const { return Triple{points[0], points[1], points[2]}; }
};

struct PentagonModuli {
    double t1 = 0, t2 = 0, t4 = 0, t = 0;
};

Mat3 pentagon_product(const std::array<Point, 5>& pts);
// relation residual against the nearest cube root of unity
double pentagon_residual(const std::array<Point, 5>& pts, int* k = nullptr);
int verify_pentagon(const std::array<Point, 5>& pts, double tol = default_tol);
// |8i alpha + 4 beta - 1 - delta (4 ta(p4,p5) - 1)|
double relation_residual(const Pentagon& P, double tol = default_tol);

Pentagon build_pentagon(int delta_k, const Point& p4, const Point& p5, double tol = default_tol);

// residual of the moduli equation
double moduli_residual(const PentagonModuli& m);
Pentagon pentagon_from_moduli(const PentagonModuli& m, int delta_k, double s5, double tol = default_tol);
PentagonModuli pentagon_moduli(const Pentagon& P);

bool is_real_pentagon(const Pentagon& P, double tol = 1e-8);

// bending on the adjacent pair: P12 .. P45, P51
Pentagon apply_move(const Pentagon& P, const Move& m, double tol = default_tol);
Pentagon apply_program(const Pentagon& P, const BendProgram& prog, double tol = default_tol);
// (p_{1+shift}, ..., p_{5+shift})
Pentagon cyclic_relabel(const Pentagon& P, int shift);

struct PentagonConnection {
    BendProgram program;
    Mat3 conjugator = Mat3::Identity();  // g A' = B
    Pentagon end;
    double coord_residual = 0;
    double point_residual = 0;
};

PentagonConnection connect_pentagons(const Pentagon& A, const Pentagon& B, double tol = default_tol);

} // namespace chg

#pragma once

#include "loplab/params.hpp"

#include <Eigen/Core>

#include <complex>

namespace loplab {

using cplx = std::complex<double>;
using Mat7 = Eigen::Matrix<double, 7, 7>;
using Mat67 = Eigen::Matrix<double, 6, 7>;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using CMat7 = Eigen::Matrix<cplx, 7, 7>;
using CMat67 = Eigen::Matrix<cplx, 6, 7>;
using CVec7 = Eigen::Matrix<cplx, 7, 1>;

// Fixed ordering of the perturbation U = (p, v1, v2, F11, F21, F12, F22).
enum Unknown : int { P = 0, V1 = 1, V2 = 2, F11 = 3, F21 = 4, F12 = 5, F22 = 6 };

// Boundary rows of B0, B2, B3 in the order the boundary conditions are listed.
enum BoundaryRow : int {
    MassFlux = 0,       // v1 + d0 p - ell0/(M^2 R) v2 = 0
    FrontEliminated = 1,  // (d_t - ell0/M^2 d_2) v2 = a0 d_2 p
    TangentialF1 = 2,   // F11 + F11hat p - F21hat/R v2 = 0
    TangentialF2 = 3,   // F12 + F12hat p - F22hat/R v2 = 0
    NormalF1 = 4,       // F21 - F11hat v2 = 0
    NormalF2 = 5,       // F22 - F12hat v2 = 0
};

// Constant-coefficient linearized problem behind the shock:
//   A0 U_t + A1 U_x1 + A2 U_x2 = 0     (x1 > 0)
//   B0 U_t + B2 U_x2 + B3 U = 0        (x1 = 0)
struct SystemMatrices {
    Mat7 a0 = Mat7::Zero();
    Mat7 a1 = Mat7::Zero();
    Mat7 a2 = Mat7::Zero();
    Mat67 b0 = Mat67::Zero();
    Mat67 b2 = Mat67::Zero();
    Mat67 b3 = Mat67::Zero();
};

// Fills a0, a1, a2; the boundary part is left zero.
SystemMatrices assemble_interior(const DerivedQuantities& d);

// Fills b0, b2, b3 into an existing matrix set.
void assemble_boundary(const DerivedQuantities& d, SystemMatrices& mats);

// Interior and boundary matrices together.
SystemMatrices assemble(const DerivedQuantities& d);

// s A0 + lambda A1 + i omega A2
CMat7 interior_symbol(const SystemMatrices& mats, cplx s, double omega, cplx lambda);

// s B0 + i omega B2 + B3
CMat67 boundary_symbol(const SystemMatrices& mats, cplx s, double omega);

// Vector spanning the kernel of the boundary symbol, and its image under A1.
struct BoundaryKernel {
    CVec7 u0;
    CVec7 a1u0;
};

// u0 from the closed form (first component s - i ell0 omega / M^2, no
// renormalization); a1u0 = A1 * u0 by matrix-vector product.
BoundaryKernel boundary_kernel(const DerivedQuantities& d, const SystemMatrices& mats, cplx s, double omega);
BoundaryKernel boundary_kernel(const DerivedQuantities& d, cplx s, double omega);

// Closed form of A1 u0, used only to cross-check the product above.
// Third component is i R (M^2 - M1^2) omega times the common prefactor.
CVec7 a1u0_closed_form(const DerivedQuantities& d, cplx s, double omega);

struct Signature {
    int negative = 0;
    int positive = 0;
    int zero = 0;
    double determinant = 0.0;
    Vec7 eigenvalues = Vec7::Zero();
};

// Inertia of the symmetric matrix A1; zero eigenvalues are those with
// |mu| <= tol * max|mu|.
Signature a1_signature(const SystemMatrices& mats, double tol = 1e-12);

}  // namespace loplab

#include "loplab/system.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>

namespace loplab {

namespace {

void set_sym(Mat7& a, int i, int j, double v) {
    // Adding +0 turns -0 entries into +0.
    a(i, j) = v + 0.0;
    a(j, i) = v + 0.0;
}

}  // namespace

SystemMatrices assemble_interior(const DerivedQuantities& d) {
    const double m2 = d.mach() * d.mach();
    const double f11 = d.params.f11(), f12 = d.params.f12();
    const double f21 = d.params.f21(), f22 = d.params.f22();

    SystemMatrices mats;

    mats.a0.diagonal() << 1.0, m2, m2, 1.0, 1.0, 1.0, 1.0;

    Mat7& a1 = mats.a1;
    a1.diagonal() << 1.0, m2, m2, 1.0, 1.0, 1.0, 1.0;
    set_sym(a1, P, V1, 1.0);
    set_sym(a1, V1, F11, -f11);
    set_sym(a1, V2, F21, -f11);
    set_sym(a1, V1, F12, -f12);
    set_sym(a1, V2, F22, -f12);

    Mat7& a2 = mats.a2;
    set_sym(a2, P, V2, 1.0);
    set_sym(a2, V1, F11, -f21);
    set_sym(a2, V2, F21, -f21);
    set_sym(a2, V1, F12, -f22);
    set_sym(a2, V2, F22, -f22);

    return mats;
}

void assemble_boundary(const DerivedQuantities& d, SystemMatrices& mats) {
    const double m2 = d.mach() * d.mach();
    const double r = d.ratio();
    const double f11 = d.params.f11(), f12 = d.params.f12();
    const double f21 = d.params.f21(), f22 = d.params.f22();

    mats.b0.setZero();
    mats.b2.setZero();
    mats.b3.setZero();

    mats.b3(MassFlux, P) = d.d0;
    mats.b3(MassFlux, V1) = 1.0;
    mats.b3(MassFlux, V2) = -d.ell0 / (m2 * r);

    // Front perturbation removed by cross differentiation.
    mats.b0(FrontEliminated, V2) = 1.0;
    mats.b2(FrontEliminated, V2) = -d.ell0 / m2;
    mats.b2(FrontEliminated, P) = -d.a0;

    mats.b3(TangentialF1, F11) = 1.0;
    mats.b3(TangentialF1, P) = f11;
    mats.b3(TangentialF1, V2) = -f21 / r;

    mats.b3(TangentialF2, F12) = 1.0;
    mats.b3(TangentialF2, P) = f12;
    mats.b3(TangentialF2, V2) = -f22 / r;

    mats.b3(NormalF1, F21) = 1.0;
    mats.b3(NormalF1, V2) = -f11;

    mats.b3(NormalF2, F22) = 1.0;
    mats.b3(NormalF2, V2) = -f12;

    mats.b0.array() += 0.0;
    mats.b2.array() += 0.0;
    mats.b3.array() += 0.0;
}

SystemMatrices assemble(const DerivedQuantities& d) {
    SystemMatrices mats = assemble_interior(d);
    assemble_boundary(d, mats);
    return mats;
}

CMat7 interior_symbol(const SystemMatrices& mats, cplx s, double omega, cplx lambda) {
    const cplx iw(0.0, omega);
    return s * mats.a0.cast<cplx>() + lambda * mats.a1.cast<cplx>() + iw * mats.a2.cast<cplx>();
}

CMat67 boundary_symbol(const SystemMatrices& mats, cplx s, double omega) {
    const cplx iw(0.0, omega);
    return s * mats.b0.cast<cplx>() + iw * mats.b2.cast<cplx>() + mats.b3.cast<cplx>();
}

BoundaryKernel boundary_kernel(const DerivedQuantities& d, const SystemMatrices& mats, cplx s, double omega) {
    const double m2 = d.mach() * d.mach();
    const double r = d.ratio();
    const double l0 = d.ell0;
    const double a0 = d.a0;
    const double f11 = d.params.f11(), f12 = d.params.f12();
    const double f21 = d.params.f21(), f22 = d.params.f22();
    const cplx iw(0.0, omega);

    BoundaryKernel k;
    k.u0(P) = s - iw * (l0 / m2);
    k.u0(V1) = -d.d0 * s + iw * (l0 / m2);
    k.u0(V2) = iw * a0;
    k.u0(F11) = -f11 * s + iw * (a0 * f21 / r + l0 * f11 / m2);
    k.u0(F21) = iw * (a0 * f11);
    k.u0(F12) = -f12 * s + iw * (a0 * f22 / r + l0 * f12 / m2);
    k.u0(F22) = iw * (a0 * f12);

    k.a1u0 = mats.a1.cast<cplx>() * k.u0;
    return k;
}

BoundaryKernel boundary_kernel(const DerivedQuantities& d, cplx s, double omega) {
    return boundary_kernel(d, assemble_interior(d), s, omega);
}

CVec7 a1u0_closed_form(const DerivedQuantities& d, cplx s, double omega) {
    const double m2 = d.mach() * d.mach();
    const double m1_sq = d.m1 * d.m1;
    const cplx iw(0.0, omega);
    const double pref = -d.beta_sq() / (2.0 * m2);

    CVec7 v;
    v << s, iw * d.ell0 - s * m2, iw * (d.ratio() * (m2 - m1_sq)), iw * d.params.f21() - d.params.f11() * s, 0.0,
        iw * d.params.f22() - d.params.f12() * s, 0.0;
    return pref * v;
}

Signature a1_signature(const SystemMatrices& mats, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat7> es(mats.a1, Eigen::EigenvaluesOnly);
    Signature sig;
    sig.eigenvalues = es.eigenvalues();
    const double scale = sig.eigenvalues.cwiseAbs().maxCoeff();
    for (int i = 0; i < 7; ++i) {
        const double mu = sig.eigenvalues(i);
        if (std::abs(mu) <= tol * scale) {
            ++sig.zero;
        } else if (mu < 0.0) {
            ++sig.negative;
        } else {
            ++sig.positive;
        }
    }
    sig.determinant = mats.a1.determinant();
    return sig;
}

}  // namespace loplab

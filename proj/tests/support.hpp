#pragma once

// Generators and independent reference formulas shared by the test binaries.

#include "loplab/params.hpp"
#include "loplab/system.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace testing_support {

using loplab::cplx;
using loplab::Mat2;
using loplab::ShockParameters;

inline ShockParameters make(double m, double r, double f11, double f12, double f21, double f22) {
    ShockParameters p;
    p.mach = m;
    p.density_ratio = r;
    p.deformation << f11, f12, f21, f22;
    return p;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    // Open interval (a, b).
    double open(double a, double b) {
        std::uniform_real_distribution<double> dist(a, b);
        double x = dist(rng_);
        while (x <= a || x >= b) x = dist(rng_);
        return x;
    }

    // F entries uniform in [-f_range, f_range], M uniform in (M1, M*), R in (r_lo, r_hi).
    ShockParameters admissible(double f_range = 2.0, double r_lo = 0.0, double r_hi = 5.0) {
        ShockParameters p;
        p.deformation << open(-f_range, f_range), open(-f_range, f_range), open(-f_range, f_range),
            open(-f_range, f_range);
        const double m1 = std::hypot(p.f11(), p.f12());
        const double ms = std::sqrt(1.0 + m1 * m1);
        p.mach = open(m1, ms);
        p.density_ratio = open(r_lo, r_hi);
        return p;
    }

    // Admissible point with M kept away from both Lax bounds, for numerically tame sampling.
    ShockParameters interior_admissible(double f_range = 1.5, double r_lo = 0.2, double r_hi = 5.0) {
        ShockParameters p = admissible(f_range, r_lo, r_hi);
        const double m1 = std::hypot(p.f11(), p.f12());
        const double ms = std::sqrt(1.0 + m1 * m1);
        p.mach = m1 + (ms - m1) * open(0.05, 0.95);
        return p;
    }

    // Laplace frequency with Re s in (eta_lo, eta_hi), Im s in (-xi_max, xi_max).
    cplx frequency(double eta_lo = 0.01, double eta_hi = 3.0, double xi_max = 3.0) {
        return {open(eta_lo, eta_hi), open(-xi_max, xi_max)};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Reference values written out from the defining formulas, in long double.
struct Reference {
    long double m1, m2, m_star, beta, ell0, det_f, sigma, k, k1, k2, k3, d_cal;
};

inline Reference reference(const ShockParameters& p) {
    const long double f11 = p.f11(), f12 = p.f12(), f21 = p.f21(), f22 = p.f22();
    const long double m = p.mach, r = p.density_ratio;
    Reference ref;
    ref.m1 = std::sqrt(f11 * f11 + f12 * f12);
    ref.m2 = std::sqrt(f21 * f21 + f22 * f22);
    ref.m_star = std::sqrt(1 + ref.m1 * ref.m1);
    ref.beta = std::sqrt(ref.m_star * ref.m_star - m * m);
    ref.ell0 = f11 * f21 + f12 * f22;
    ref.det_f = f11 * f22 - f12 * f21;
    ref.sigma = std::sqrt(ref.m_star * ref.m_star + ref.m2 * ref.m2 + ref.det_f * ref.det_f);
    ref.k = r * (m * m - ref.m1 * ref.m1) + ref.m2 * ref.m2;
    const long double ms4 = std::pow(ref.m_star, 4);
    const long double lo = m * ref.sigma - std::abs(ref.ell0) * ref.beta;
    const long double hi = m * ref.sigma + std::abs(ref.ell0) * ref.beta;
    ref.k1 = lo * lo / ms4;
    ref.k2 = 1 + ref.m2 * ref.m2;
    ref.k3 = hi * hi / ms4;
    const long double mt = std::sqrt(m * m - ref.m1 * ref.m1);
    ref.d_cal = (lo - ref.m_star * ref.m_star * mt) * (lo + ref.m_star * ref.m_star * mt);
    return ref;
}

// Interior matrices typed in from the block layout, entry by entry.
struct ReferenceMatrices {
    loplab::Mat7 a0, a1, a2;
};

inline ReferenceMatrices reference_matrices(const ShockParameters& p) {
    const double m2 = p.mach * p.mach;
    const double f11 = p.f11(), f12 = p.f12(), f21 = p.f21(), f22 = p.f22();
    ReferenceMatrices r;
    // clang-format off
    r.a0 << 1, 0,  0,  0, 0, 0, 0,
            0, m2, 0,  0, 0, 0, 0,
            0, 0,  m2, 0, 0, 0, 0,
            0, 0,  0,  1, 0, 0, 0,
            0, 0,  0,  0, 1, 0, 0,
            0, 0,  0,  0, 0, 1, 0,
            0, 0,  0,  0, 0, 0, 1;
    r.a1 << 1, 1,    0,    0,    0,    0,    0,
            1, m2,   0,    -f11, 0,    -f12, 0,
            0, 0,    m2,   0,    -f11, 0,    -f12,
            0, -f11, 0,    1,    0,    0,    0,
            0, 0,    -f11, 0,    1,    0,    0,
            0, -f12, 0,    0,    0,    1,    0,
            0, 0,    -f12, 0,    0,    0,    1;
    r.a2 << 0, 0,    1,    0,    0,    0,    0,
            0, 0,    0,    -f21, 0,    -f22, 0,
            1, 0,    0,    0,    -f21, 0,    -f22,
            0, -f21, 0,    0,    0,    0,    0,
            0, 0,    -f21, 0,    0,    0,    0,
            0, -f22, 0,    0,    0,    0,    0,
            0, 0,    -f22, 0,    0,    0,    0;
    // clang-format on
    return r;
}

// Hersh root from the reference matrices: the eigenvalue of
// -A1^{-1}(s A0 + i omega A2) with the largest real part, plus the count of
// eigenvalues with positive real part.
struct PencilRoot {
    cplx lambda;
    int positive = 0;
};

inline PencilRoot reference_hersh(const ShockParameters& p, cplx s, double omega) {
    const ReferenceMatrices r = reference_matrices(p);
    const loplab::CMat7 rhs = s * r.a0.cast<cplx>() + cplx(0.0, omega) * r.a2.cast<cplx>();
    const loplab::CMat7 pencil = -r.a1.cast<cplx>().fullPivLu().solve(rhs);
    Eigen::ComplexEigenSolver<loplab::CMat7> es(pencil, false);
    PencilRoot out;
    out.lambda = es.eigenvalues()(0);
    for (int k = 0; k < 7; ++k) {
        const cplx z = es.eigenvalues()(k);
        if (z.real() > 0.0) ++out.positive;
        if (z.real() > out.lambda.real()) out.lambda = z;
    }
    return out;
}

// Gas-dynamics stability condition for F = 0.
inline bool gas_uniformly_stable(double m, double r) { return m * m * (r - 1.0) < 1.0; }

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support

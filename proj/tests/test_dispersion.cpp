#include "doctest.h"
#include "support.hpp"

#include "loplab/dispersion.hpp"
#include "loplab/errors.hpp"
#include "loplab/lopatinski.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace loplab;
using testing_support::make;
using testing_support::Sampler;

namespace {

// Smallest singular value of s A0 + lambda A1 + i omega A2 over its largest.
double symbol_conditioning(const DerivedQuantities& d, cplx s, double w, cplx lam) {
    Eigen::JacobiSVD<CMat7> svd(interior_symbol(assemble_interior(d), s, w, lam));
    return svd.singularValues()(6) / svd.singularValues()(0);
}

}  // namespace

TEST_CASE("dispersion residual: sigma form equals expanded form") {
    Sampler rng(31);
    for (int n = 0; n < 1000; ++n) {
        const DerivedQuantities d = derive(rng.admissible());
        const cplx s = rng.frequency(-3, 3);
        const double w = rng.open(-3, 3);
        const cplx lam(rng.open(-3, 3), rng.open(-3, 3));
        const cplx a = dispersion_residual(d, s, w, lam);
        const cplx b = dispersion_residual_expanded(d, s, w, lam);
        REQUIRE(std::abs(a - b) <= 1e-13 * dispersion_scale(d, s, w, lam));
    }
}

TEST_CASE("dispersion polynomial: roots are normal-mode exponents") {
    Sampler rng(32);
    for (int n = 0; n < 300; ++n) {
        const DerivedQuantities d = derive(rng.interior_admissible());
        const cplx s = rng.frequency();
        const double w = rng.open(-3, 3);
        std::vector<cplx> poly = full_dispersion_roots(d, s, w);
        std::vector<cplx> pencil = normal_mode_exponents(assemble_interior(d), s, w);
        REQUIRE(poly.size() == 7);
        for (cplx lam : poly) {
            REQUIRE(symbol_conditioning(d, s, w, lam) <= 1e-6);
        }
        // Each pencil eigenvalue has a polynomial root nearby.
        for (cplx e : pencil) {
            double best = 1e300;
            for (cplx r : poly) best = std::min(best, std::abs(r - e));
            REQUIRE(best <= 1e-4 * (1.0 + std::abs(e)));
        }
    }
}

TEST_CASE("dispersion polynomial: omega = 0 factorization") {
    const DerivedQuantities d = derive(make(0.8, 1.2, 0.3, 0.2, 0.1, 0.4));
    const cplx s(0.5, 0.25);
    const std::vector<cplx> roots = full_dispersion_roots(d, s, 0.0);
    const Polynomial7 p = dispersion_polynomial(d, s, 0.0);
    for (cplx r : roots) {
        CHECK(std::abs(evaluate(p, r)) <= 1e-12 * std::abs(p[7]) * std::pow(1.0 + std::abs(r), 7));
    }
    CHECK(std::count_if(roots.begin(), roots.end(), [&](cplx r) { return std::abs(r + s) <= 1e-15; }) == 3);
}

TEST_CASE("dispersion polynomial: errors") {
    // M = M1 removes the top-degree term.
    const DerivedQuantities d = derive(make(0.5, 2.0, 0.5, 0, 0, 0.5));
    CHECK_THROWS_AS(full_dispersion_roots(d, cplx(1.0, 0.0), 1.0), DegeneratePolynomial);
    const DerivedQuantities ok = derive(make(1.0, 2.0, 0.5, 0, 0, 0.5));
    CHECK_THROWS_AS(full_dispersion_roots(ok, cplx(0.0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lambda_pair(ok, cplx(-0.1, 0.0), 1.0), std::invalid_argument);
}

TEST_CASE("Hersh root: exactly one exponent with positive real part") {
    Sampler rng(33);
    for (int n = 0; n < 1000; ++n) {
        const ShockParameters p = rng.admissible();
        const DerivedQuantities d = derive(p);
        const cplx s = rng.frequency();
        const double w = rng.open(-3, 3);
        const auto ref = testing_support::reference_hersh(p, s, w);
        REQUIRE(ref.positive == 1);
        const LambdaPair lp = lambda_pair(d, s, w);
        REQUIRE(std::abs(lp.plus - ref.lambda) <= 1e-9 * std::max(1.0, std::abs(ref.lambda)));
        REQUIRE(lp.plus.real() > 0.0);
        REQUIRE(lp.minus.real() < 0.0);
        REQUIRE(std::abs(dispersion_residual(d, s, w, lp.plus)) <= 1e-12 * dispersion_scale(d, s, w, lp.plus));
        REQUIRE(std::abs(dispersion_residual(d, s, w, lp.minus)) <= 1e-12 * dispersion_scale(d, s, w, lp.minus));
    }
}

TEST_CASE("Hersh root: gas dynamics hand value") {
    // F = 0, M = 0.8, omega = 0: lambda+ = M (M + M*) s / beta^2 = 0.8 * 1.8 / 0.36 s = 4 s.
    const DerivedQuantities d = derive(make(0.8, 1.2, 0, 0, 0, 0));
    CHECK(std::abs(lambda_plus(d, cplx(1.0, 0.0), 0.0) - 4.0) <= 1e-14);
    CHECK(std::abs(lambda_plus(d, cplx(0.0, 1.0), 0.0) - cplx(0.0, 4.0)) <= 1e-14);
    CHECK(std::abs(lambda_plus(d, cplx(0.3, 0.0), 0.0) - 1.2) <= 1e-14);
}

TEST_CASE("Hersh root: homogeneity") {
    Sampler rng(34);
    for (int n = 0; n < 300; ++n) {
        const DerivedQuantities d = derive(rng.admissible());
        const cplx s = rng.frequency();
        const double w = rng.open(-3, 3);
        const double t = rng.open(0.1, 10.0);
        const cplx a = lambda_plus(d, t * s, t * w);
        const cplx b = t * lambda_plus(d, s, w);
        REQUIRE(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
}

TEST_CASE("Hersh root on the imaginary axis is the limit from the right") {
    Sampler rng(35);
    for (int n = 0; n < 500; ++n) {
        const DerivedQuantities d = derive(rng.interior_admissible());
        const double w = rng.open(0.2, 2.0) * (rng.open(0, 1) < 0.5 ? -1.0 : 1.0);
        const cplx s(0.0, rng.open(-4, 4));
        const LambdaPair on_axis = lambda_pair(d, s, w);
        if (on_axis.glancing) continue;
        const cplx near = lambda_plus(d, s + 1e-9, w);
        REQUIRE(std::abs(on_axis.plus - near) <= 1e-6 * (1.0 + std::abs(near)));
    }
}

TEST_CASE("delta branches: limits on either side of the transition points") {
    Sampler rng(36);
    for (int n = 0; n < 500; ++n) {
        const DerivedQuantities d = derive(rng.interior_admissible());
        const TransitionPoints tp = transition_points(d);
        const double w = d.ell0 < 0.0 ? -1.0 : 1.0;

        const double right = tp.xi_star_plus + rng.open(0.01, 3.0);
        const auto dr = delta_pm(d, right, w);
        REQUIRE(dr.has_value());
        REQUIRE(std::abs(lambda_plus(d, cplx(0.0, right), w) - cplx(0.0, dr->plus)) <= 1e-10 * (1 + std::abs(dr->plus)));

        const double left = tp.xi_star_minus - rng.open(0.01, 3.0);
        const auto dl = delta_pm(d, left, w);
        REQUIRE(dl.has_value());
        REQUIRE(std::abs(lambda_plus(d, cplx(0.0, left), w) - cplx(0.0, dl->minus)) <= 1e-10 * (1 + std::abs(dl->minus)));

        // Between the transition points the radicand is negative and lambda+ leaves the axis.
        const double mid = 0.5 * (tp.xi_star_plus + tp.xi_star_minus);
        REQUIRE_FALSE(delta_pm(d, mid, w).has_value());
        REQUIRE(lambda_plus(d, cplx(0.0, mid), w).real() > 0.0);
    }
}

TEST_CASE("delta branches: values at the transition points") {
    Sampler rng(37);
    for (int n = 0; n < 500; ++n) {
        const DerivedQuantities d = derive(rng.admissible());
        const TransitionPoints tp = transition_points(d);
        const double w = d.ell0 < 0.0 ? -1.0 : 1.0;
        const double scale = d.mach() * d.mach() * d.m_star_sq() * (1 + tp.xi_star_plus * tp.xi_star_plus) + d.k2;
        REQUIRE(std::abs(delta_discriminant(d, tp.xi_star_plus, w)) <= 1e-12 * scale);
        REQUIRE(std::abs(delta_discriminant(d, tp.xi_star_minus, w)) <= 1e-12 * scale);
        const double centre_plus = (d.mach() * d.mach() * tp.xi_star_plus - d.abs_ell0()) / d.beta_sq();
        REQUIRE(centre_plus == doctest::Approx(std::sqrt(d.k1) / d.beta).epsilon(1e-9));
    }
}

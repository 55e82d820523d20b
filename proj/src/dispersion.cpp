#include "loplab/dispersion.hpp"

#include "loplab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace loplab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Ascending-power polynomial product.
template <std::size_t N, std::size_t K>
std::array<cplx, N + K - 1> multiply(const std::array<cplx, N>& a, const std::array<cplx, K>& b) {
    std::array<cplx, N + K - 1> out{};
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < K; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

double residual_scale(const Polynomial7& p, cplx x) {
    double acc = 0.0;
    const double ax = std::abs(x);
    for (int k = 7; k >= 0; --k) {
        acc = acc * ax + std::abs(p[k]);
    }
    return acc;
}

cplx derivative(const Polynomial7& p, cplx x) {
    cplx acc = 0.0;
    for (int k = 7; k >= 1; --k) {
        acc = acc * x + static_cast<double>(k) * p[k];
    }
    return acc;
}

struct Reduced {
    double abs_l0;
    double w;
};

// ell0 < 0 is folded into the sign of omega so that only |ell0| appears.
Reduced reduce(const DerivedQuantities& d, double omega) { return {d.abs_ell0(), d.ell0 < 0.0 ? -omega : omega}; }

// Both roots of beta^2 l^2 - 2 (M^2 s - i|l0| w) l - (M^2 s^2 + K2 w^2) = 0, principal sqrt.
struct Candidates {
    cplx root_plus_sqrt;
    cplx root_minus_sqrt;
    cplx sqrt_disc;
    cplx disc_derivative;  // d(disc)/ds
};

Candidates candidates(const DerivedQuantities& d, cplx s, double omega) {
    const Reduced red = reduce(d, omega);
    const double m2 = d.mach() * d.mach();
    const double b2 = d.beta_sq();
    const cplx i(0.0, 1.0);
    const cplx b = m2 * s - i * red.abs_l0 * red.w;
    const cplx disc = m2 * d.m_star_sq() * s * s - 2.0 * i * red.abs_l0 * m2 * s * red.w +
                      (d.k2 * b2 - d.ell0 * d.ell0) * red.w * red.w;
    const cplx root = std::sqrt(disc);
    Candidates c;
    c.root_plus_sqrt = (b + root) / b2;
    c.root_minus_sqrt = (b - root) / b2;
    c.sqrt_disc = root;
    c.disc_derivative = 2.0 * m2 * d.m_star_sq() * s - 2.0 * i * red.abs_l0 * m2 * red.w;
    return c;
}

LambdaPair interior_pair(const DerivedQuantities& d, cplx s, double omega) {
    const Candidates c = candidates(d, s, omega);
    const double scale = std::abs(s) + std::abs(omega);
    const double tol = 64.0 * kEps * scale;
    if (std::real(s) > tol && std::abs(std::real(c.root_plus_sqrt)) <= tol &&
        std::abs(std::real(c.root_minus_sqrt)) <= tol) {
        throw BranchAmbiguity("both roots lie on the imaginary axis at Re s = " + std::to_string(std::real(s)));
    }
    LambdaPair out;
    if (std::real(c.root_plus_sqrt) >= std::real(c.root_minus_sqrt)) {
        out.plus = c.root_plus_sqrt;
        out.minus = c.root_minus_sqrt;
    } else {
        out.plus = c.root_minus_sqrt;
        out.minus = c.root_plus_sqrt;
    }
    out.glancing = std::abs(c.sqrt_disc) <= 1e-8 * scale;
    out.extrapolated = out.plus;
    return out;
}

}  // namespace

FrequencyPoint make_frequency_point(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const cplx iw(0.0, omega);
    FrequencyPoint fp;
    fp.s = s;
    fp.omega = omega;
    fp.lambda = lambda;
    fp.big_omega = s + lambda;
    fp.sigma1 = d.params.f11() * lambda + iw * d.params.f21();
    fp.sigma2 = d.params.f12() * lambda + iw * d.params.f22();
    return fp;
}

cplx dispersion_residual(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const FrequencyPoint fp = make_frequency_point(d, s, omega, lambda);
    const double m2 = d.mach() * d.mach();
    return m2 * fp.big_omega * fp.big_omega - fp.sigma1 * fp.sigma1 - fp.sigma2 * fp.sigma2 - lambda * lambda +
           omega * omega;
}

cplx dispersion_residual_expanded(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const double m2 = d.mach() * d.mach();
    const cplx om = s + lambda;
    const cplx i(0.0, 1.0);
    return m2 * om * om - d.m_star_sq() * lambda * lambda + d.k2 * omega * omega - 2.0 * i * d.ell0 * lambda * omega;
}

double dispersion_scale(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const double m2 = d.mach() * d.mach();
    const double al = std::abs(lambda);
    return m2 * std::norm(s + lambda) + d.m_star_sq() * al * al + d.k2 * omega * omega +
           2.0 * d.abs_ell0() * al * std::abs(omega);
}

Polynomial7 dispersion_polynomial(const DerivedQuantities& d, cplx s, double omega) {
    const double m2 = d.mach() * d.mach();
    const double m1_sq = d.m1 * d.m1;
    const double m2_sq = d.m2 * d.m2;
    const cplx i(0.0, 1.0);

    const std::array<cplx, 2> om{s, 1.0};
    const auto om2 = multiply(om, om);
    const auto om3 = multiply(om2, om);

    // M^2 Omega^2 - (M1^2 l^2 + 2 i ell0 w l - M2^2 w^2)
    const std::array<cplx, 3> shear{m2 * s * s + m2_sq * omega * omega, 2.0 * m2 * s - 2.0 * i * d.ell0 * omega,
                                    cplx(m2 - m1_sq)};
    // previous factor - l^2 + w^2
    const std::array<cplx, 3> incoming{shear[0] + omega * omega, shear[1], shear[2] - 1.0};

    return multiply(multiply(om3, shear), incoming);
}

cplx evaluate(const Polynomial7& p, cplx x) {
    cplx acc = 0.0;
    for (int k = 7; k >= 0; --k) {
        acc = acc * x + p[k];
    }
    return acc;
}

std::vector<cplx> full_dispersion_roots(const DerivedQuantities& d, cplx s, double omega, const RootOptions& options) {
    if (s == cplx(0.0) && omega == 0.0) {
        throw std::invalid_argument("full_dispersion_roots: s and omega both vanish");
    }
    const double m2 = d.mach() * d.mach();
    const double m1_sq = d.m1 * d.m1;
    const double scale = std::abs(s) + std::abs(omega);

    const Polynomial7 p = dispersion_polynomial(d, s, omega);
    const double coeff_norm = std::accumulate(p.begin(), p.end(), 0.0, [](double a, cplx c) { return a + std::abs(c); });
    if (std::abs(m2 - m1_sq) <= 64.0 * kEps * std::max(m2, 1.0) ||
        std::abs(p[7]) <= 64.0 * kEps * coeff_norm / std::pow(std::max(scale, 1.0), 7)) {
        throw DegeneratePolynomial("leading coefficient (M^2 - M1^2)(-beta^2) vanishes: degree drops below 7");
    }

    std::vector<cplx> roots;
    roots.reserve(7);

    if (omega == 0.0) {
        // Omega^3 (M^2 Omega^2 - M1^2 l^2)(M^2 Omega^2 - M*^2 l^2)
        const double m = d.mach();
        for (int k = 0; k < 3; ++k) roots.push_back(-s);
        roots.push_back(-m * s / (m - d.m1));
        roots.push_back(-m * s / (m + d.m1));
        roots.push_back(m * (m + d.m_star) * s / d.beta_sq());
        roots.push_back(m * (m - d.m_star) * s / d.beta_sq());
    } else {
        Eigen::Matrix<cplx, 7, 7> companion = Eigen::Matrix<cplx, 7, 7>::Zero();
        for (int k = 1; k < 7; ++k) companion(k, k - 1) = 1.0;
        for (int k = 0; k < 7; ++k) companion(k, 6) = -p[k] / p[7];
        Eigen::ComplexEigenSolver<Eigen::Matrix<cplx, 7, 7>> es(companion, false);
        if (es.info() != Eigen::Success) {
            throw DegeneratePolynomial("companion eigenvalue iteration did not converge");
        }
        for (int k = 0; k < 7; ++k) roots.push_back(es.eigenvalues()(k));

        auto accepted = [&](cplx x) {
            return std::abs(evaluate(p, x)) <= options.polish_tol * residual_scale(p, x);
        };

        // Newton polishing, keeping only steps that reduce the residual.
        for (cplx& x : roots) {
            double res = std::abs(evaluate(p, x));
            for (int it = 0; it < options.max_newton && !accepted(x); ++it) {
                const cplx dp = derivative(p, x);
                if (dp == cplx(0.0)) break;
                const cplx next = x - evaluate(p, x) / dp;
                const double next_res = std::abs(evaluate(p, next));
                if (!(next_res < res)) break;
                x = next;
                res = next_res;
            }
        }

        // Eigenvalues of a multiple root scatter on a circle of radius
        // ~eps^(1/m); their mean recovers the root to working precision.
        std::vector<bool> used(7, false);
        for (int a = 0; a < 7; ++a) {
            if (used[a]) continue;
            std::vector<int> cluster{a};
            const double radius = 1e-2 * (scale + std::abs(roots[a]));
            for (int b = a + 1; b < 7; ++b) {
                if (!used[b] && std::abs(roots[b] - roots[a]) <= radius) cluster.push_back(b);
            }
            if (cluster.size() < 2) continue;
            cplx mean = 0.0;
            for (int idx : cluster) mean += roots[idx];
            mean /= static_cast<double>(cluster.size());
            if (accepted(mean)) {
                for (int idx : cluster) {
                    roots[idx] = mean;
                    used[idx] = true;
                }
            }
        }
    }

    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return std::real(a) != std::real(b) ? std::real(a) < std::real(b) : std::imag(a) < std::imag(b);
    });
    return roots;
}

LambdaPair lambda_pair(const DerivedQuantities& d, cplx s, double omega) {
    if (std::real(s) < 0.0) {
        throw std::invalid_argument("lambda_pair: Re s must be non-negative");
    }
    if (s == cplx(0.0) && omega == 0.0) {
        throw std::invalid_argument("lambda_pair: s and omega both vanish");
    }
    if (std::real(s) > 0.0) {
        return interior_pair(d, s, omega);
    }

    const double scale = std::abs(s) + std::abs(omega);
    LambdaPair out;

    if (omega == 0.0) {
        // One-dimensional modes: both roots are real multiples of s.
        const double m = d.mach();
        out.plus = m * (m + d.m_star) * s / d.beta_sq();
        out.minus = m * (m - d.m_star) * s / d.beta_sq();
        out.extrapolated = out.plus;
        return out;
    }

    const Candidates c0 = candidates(d, s, omega);

    // Follow the Hersh root from Re s > 0 down to the axis.
    const double h = 1e-7 * scale;
    const cplx lam_h = interior_pair(d, s + h, omega).plus;
    const cplx lam_h2 = interior_pair(d, s + 0.5 * h, omega).plus;
    out.extrapolated = 2.0 * lam_h2 - lam_h;

    const cplx a = c0.root_plus_sqrt;
    const cplx b = c0.root_minus_sqrt;
    const cplx rho = c0.sqrt_disc;
    out.glancing = std::abs(rho) <= 1e-8 * scale;

    bool pick_a;
    if (std::abs(std::real(rho)) > 1e-12 * scale) {
        pick_a = std::real(rho) > 0.0;
    } else if (!out.glancing) {
        // Both roots on the axis. To first order in eta,
        //   Re lambda = eta (M^2 + Re(disc' / (2 rho))) / beta^2,
        // and the Hersh root is the sign of rho that makes this positive.
        const double m2 = d.mach() * d.mach();
        const double growth_a = m2 + std::real(c0.disc_derivative / (2.0 * rho));
        const double growth_b = m2 - std::real(c0.disc_derivative / (2.0 * rho));
        pick_a = growth_a >= growth_b;
    } else {
        pick_a = std::abs(a - out.extrapolated) <= std::abs(b - out.extrapolated);
    }
    out.plus = pick_a ? a : b;
    out.minus = pick_a ? b : a;
    return out;
}

double delta_discriminant(const DerivedQuantities& d, double xi, double omega) {
    const double m2 = d.mach() * d.mach();
    const double lw = d.ell0 * omega;
    return m2 * d.m_star_sq() * xi * xi - 2.0 * m2 * lw * xi + (d.ell0 * d.ell0 - d.k2 * d.beta_sq()) * omega * omega;
}

std::optional<DeltaPair> delta_pm(const DerivedQuantities& d, double xi, double omega) {
    const double disc = delta_discriminant(d, xi, omega);
    if (disc < 0.0) {
        return std::nullopt;
    }
    const double m2 = d.mach() * d.mach();
    const double centre = m2 * xi - d.ell0 * omega;
    const double root = std::sqrt(disc);
    return DeltaPair{(centre + root) / d.beta_sq(), (centre - root) / d.beta_sq()};
}

}  // namespace loplab

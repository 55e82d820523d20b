#include "loplab/lopatinski.hpp"

#include "loplab/errors.hpp"
#include "loplab/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace loplab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Physical omega of the frame in which ell0 >= 0 and omega = 1.
double reduced_frame_omega(const DerivedQuantities& d) { return d.ell0 < 0.0 ? -1.0 : 1.0; }

double solve_bracketed(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (a + b);
}

// Newton on the real pair (dispersion, determinant residuals) at s = i xi, lambda = i delta in the
// reduced frame; steps that do not lower the residual are rejected.
void polish_boundary_root(const DerivedQuantities& d, double& xi, double& delta, const BoundaryRootOptions& opt) {
    const double m2 = d.mach() * d.mach();
    const double ms2 = d.m_star_sq();
    const double l = d.abs_ell0();
    auto eval = [&](double x, double y) {
        const double q = x + y;
        return Eigen::Vector2d(-m2 * q * q + ms2 * y * y + d.k2 + 2.0 * l * y,
                               -m2 * q * q + m2 * y * y + d.k + 2.0 * l * y);
    };
    auto scale = [&](double x, double y) {
        const double q = x + y;
        return m2 * q * q + ms2 * y * y + std::abs(d.k) + d.k2 + 2.0 * l * std::abs(y);
    };
    Eigen::Vector2d r = eval(xi, delta);
    for (int it = 0; it < opt.max_newton; ++it) {
        if (r.cwiseAbs().maxCoeff() <= opt.newton_tol * scale(xi, delta)) break;
        const double q = xi + delta;
        Eigen::Matrix2d jac;
        jac << -2.0 * m2 * q, -2.0 * m2 * q + 2.0 * ms2 * delta + 2.0 * l, -2.0 * m2 * q,
            -2.0 * m2 * q + 2.0 * m2 * delta + 2.0 * l;
        if (std::abs(jac.determinant()) == 0.0) break;
        const Eigen::Vector2d step = jac.partialPivLu().solve(r);
        const Eigen::Vector2d next = eval(xi - step(0), delta - step(1));
        if (!(next.cwiseAbs().maxCoeff() < r.cwiseAbs().maxCoeff())) break;
        xi -= step(0);
        delta -= step(1);
        r = next;
    }
}

RootRecord make_record(const DerivedQuantities& d, cplx s, cplx lambda, RootKind kind, RootBranch branch) {
    RootRecord rec;
    rec.s = s;
    rec.lambda = lambda;
    rec.omega = 1.0;
    rec.omega_physical = reduced_frame_omega(d);
    const ReducedResidual res = reduced_residual(d, s, rec.omega_physical, lambda);
    rec.residual_dispersion = res.dispersion;
    rec.residual_determinant = res.determinant;
    rec.normalized_residual = res.normalized_max();
    rec.kind = kind;
    rec.branch = branch;
    return rec;
}

// One branch of the boundary construction. sign = +1 for delta+, -1 for delta-.
std::optional<RootRecord> boundary_branch(const DerivedQuantities& d, const TransitionPoints& tp, int sign,
                                          const BoundaryRootOptions& opt) {
    const double w = reduced_frame_omega(d);
    const double b2 = d.beta_sq();
    const double m2 = d.mach() * d.mach();
    const double delta = sign * std::sqrt(d.k - d.k2) / d.beta;

    auto branch_value = [&](double xi) {
        const auto pair = delta_pm(d, xi, w);
        // The radicand can dip below zero by rounding right at the transition point.
        const DeltaPair dp = pair ? *pair : DeltaPair{(m2 * xi - d.abs_ell0()) / b2, (m2 * xi - d.abs_ell0()) / b2};
        return (sign > 0 ? dp.plus : dp.minus) - delta;
    };

    const double xi_star = sign > 0 ? tp.xi_star_plus : tp.xi_star_minus;
    // The radicand vanishes at xi*, so the branch value there is the centre
    // term alone; going through the square root would add sqrt(eps) noise.
    const double at_star = (sign > 0 ? tp.delta_star_plus : tp.delta_star_minus) - delta;
    const double snap = 64.0 * kEps * (1.0 + std::abs(delta));
    // delta+ increases from xi*+ to +inf; delta- decreases from xi*- to -inf.
    if (sign * at_star > snap) return std::nullopt;

    double xi;
    if (std::abs(at_star) <= snap || sign * branch_value(xi_star) >= 0.0) {
        xi = xi_star;
    } else {
        // Bound from delta+- >= or <= (M^2 xi - |ell0|) / beta^2.
        const double xi_far = (delta * b2 + d.abs_ell0()) / m2;
        xi = sign > 0 ? solve_bracketed(branch_value, xi_star, xi_far) : solve_bracketed(branch_value, xi_far, xi_star);
    }

    double delta_refined = delta;
    polish_boundary_root(d, xi, delta_refined, opt);

    const double side_tol = 1e-9 * (1.0 + std::abs(xi_star));
    if (sign > 0 ? xi < xi_star - side_tol : xi > xi_star + side_tol) {
        throw BranchMismatch("boundary root at xi = " + std::to_string(xi) + " lies on the wrong side of xi* = " +
                             std::to_string(xi_star));
    }

    const cplx s(0.0, xi);
    const cplx lambda(0.0, delta_refined);
    const LambdaPair lp = lambda_pair(d, s, w);
    const double gap = std::abs(lp.plus - lambda);
    if (!lp.glancing && gap > 1e-6 * (1.0 + std::abs(lambda))) {
        throw BranchMismatch("boundary root lambda = i" + std::to_string(delta_refined) +
                             " is not the limit of the Hersh root (distance " + std::to_string(gap) + ")");
    }

    RootRecord rec = make_record(d, s, lambda, RootKind::Boundary, sign > 0 ? RootBranch::Plus : RootBranch::Minus);
    if (rec.normalized_residual > opt.accept_tol) return std::nullopt;
    return rec;
}

struct Cell {
    double value;
    int i, j;
};

}  // namespace

LopatinskiMatrix build_determinant(const SystemMatrices& mats, const BoundaryKernel& kernel, cplx s, double omega,
                                   cplx lambda, double singular_tol) {
    LopatinskiMatrix out;
    out.matrix = interior_symbol(mats, s, omega, lambda);

    const Eigen::Matrix<cplx, 6, 7> kept = out.matrix.bottomRows<6>();
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 6, 7>> svd(kept);
    const auto& sv = svd.singularValues();
    out.selection_conditioning = sv(0) > 0.0 ? sv(5) / sv(0) : 0.0;
    if (out.selection_conditioning <= singular_tol) {
        throw SingularSelection("rows 2..7 of the interior symbol are dependent (relative smallest singular value " +
                                    std::to_string(out.selection_conditioning) + ")",
                                sv(5));
    }

    out.matrix.row(0) = kernel.a1u0.transpose();
    out.det = out.matrix.partialPivLu().determinant();
    return out;
}

std::vector<cplx> normal_mode_exponents(const SystemMatrices& mats, cplx s, double omega) {
    const CMat7 rhs = s * mats.a0.cast<cplx>() + cplx(0.0, omega) * mats.a2.cast<cplx>();
    const CMat7 pencil = -mats.a1.cast<cplx>().partialPivLu().solve(rhs);
    Eigen::ComplexEigenSolver<CMat7> es(pencil, false);
    if (es.info() != Eigen::Success) {
        throw Error("eigenvalue iteration for the normal-mode pencil did not converge");
    }
    std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + 7);
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return std::real(a) != std::real(b) ? std::real(a) < std::real(b) : std::imag(a) < std::imag(b);
    });
    return out;
}

cplx hersh_root_from_matrices(const SystemMatrices& mats, cplx s, double omega) {
    return normal_mode_exponents(mats, s, omega).back();
}

cplx reduced_determinant_factor(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const double m2 = d.mach() * d.mach();
    const double m1_sq = d.m1 * d.m1;
    const double m2_sq = d.m2 * d.m2;
    const double w2 = omega * omega;
    const cplx i(0.0, 1.0);
    const cplx il0w = i * d.ell0 * omega;
    const cplx big = s + lambda;
    return (lambda * lambda - w2) * s + (m2 * s - il0w) * big * lambda + m1_sq * lambda * lambda * s +
           m2_sq * w2 * lambda + il0w * lambda * (s - lambda) + d.ratio() * (m2 - m1_sq) * w2 * big;
}

double reduced_determinant_scale(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const double m2 = d.mach() * d.mach();
    const double m1_sq = d.m1 * d.m1;
    const double w2 = omega * omega;
    const double as = std::abs(s), al = std::abs(lambda), ab = std::abs(s + lambda);
    const double lw = d.abs_ell0() * std::abs(omega);
    return (al * al + w2) * as + (m2 * as + lw) * ab * al + m1_sq * al * al * as + d.m2 * d.m2 * w2 * al +
           lw * al * std::abs(s - lambda) + d.ratio() * std::abs(m2 - m1_sq) * w2 * ab;
}

double hadamard_bound(const CMat7& m) {
    double out = 1.0;
    for (int i = 0; i < 7; ++i) out *= m.row(i).norm();
    return out;
}

cplx closed_form_determinant(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const double m2 = d.mach() * d.mach();
    const cplx big = s + lambda;
    const cplx pref = d.beta_sq() * big * big * (omega * omega - lambda * lambda) / (2.0 * m2);
    return pref * reduced_determinant_factor(d, s, omega, lambda);
}

double ReducedResidual::normalized_max() const {
    auto ratio = [](cplx v, double sc) { return sc > 0.0 ? std::abs(v) / sc : std::abs(v); };
    return std::max(ratio(dispersion, dispersion_scale), ratio(determinant, determinant_scale));
}

ReducedResidual reduced_residual(const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
    const double m2 = d.mach() * d.mach();
    const cplx i(0.0, 1.0);
    const cplx big = s + lambda;
    // |ell0| times the reduced omega equals ell0 times the physical one.
    const cplx cross = 2.0 * i * d.ell0 * lambda * omega;
    const double w2 = omega * omega;
    const double lam2 = std::norm(lambda);
    const double om2 = std::norm(big);
    const double cross_mag = 2.0 * d.abs_ell0() * std::abs(lambda) * std::abs(omega);

    ReducedResidual r;
    r.dispersion = m2 * big * big - d.m_star_sq() * lambda * lambda + d.k2 * w2 - cross;
    r.determinant = m2 * big * big - m2 * lambda * lambda + d.k * w2 - cross;
    r.dispersion_scale = m2 * om2 + d.m_star_sq() * lam2 + d.k2 * w2 + cross_mag;
    r.determinant_scale = m2 * om2 + m2 * lam2 + std::abs(d.k) * w2 + cross_mag;
    return r;
}

TransitionPoints transition_points(const DerivedQuantities& d) {
    const double m = d.mach();
    const double ms2 = d.m_star_sq();
    const double l = d.abs_ell0();
    TransitionPoints tp;
    tp.xi_star_plus = (m * l + d.beta * d.sigma) / (m * ms2);
    tp.xi_star_minus = (m * l - d.beta * d.sigma) / (m * ms2);
    tp.delta_star_plus = (m * m * tp.xi_star_plus - l) / d.beta_sq();
    tp.delta_star_minus = (m * m * tp.xi_star_minus - l) / d.beta_sq();
    return tp;
}

double transition_quadratic(const DerivedQuantities& d, double xi) {
    const double m2 = d.mach() * d.mach();
    return m2 * d.m_star_sq() * xi * xi - 2.0 * d.abs_ell0() * m2 * xi + d.ell0 * d.ell0 - d.k2 * d.beta_sq();
}

const char* to_string(RootKind kind) { return kind == RootKind::Interior ? "interior" : "boundary"; }

const char* to_string(RootBranch branch) {
    switch (branch) {
        case RootBranch::Plus: return "plus";
        case RootBranch::Minus: return "minus";
        case RootBranch::None: break;
    }
    return "none";
}

std::vector<RootRecord> find_boundary_roots(const DerivedQuantities& d, const BoundaryRootOptions& options) {
    std::vector<RootRecord> out;
    if (!(d.k > d.k2)) return out;
    const TransitionPoints tp = transition_points(d);
    if (auto rec = boundary_branch(d, tp, +1, options)) out.push_back(*rec);
    if (auto rec = boundary_branch(d, tp, -1, options)) out.push_back(*rec);
    return out;
}

std::vector<BoundaryLineHit> scan_boundary_line(const DerivedQuantities& d, int samples) {
    const double w = reduced_frame_omega(d);
    const TransitionPoints tp = transition_points(d);

    // Any joint root has delta^2 = |K - K2| / beta^2 at most and xi within
    // |delta| + sqrt(M*^2 delta^2 + K2 + 2|ell0||delta|) / M.
    const double dmax = std::sqrt(std::abs(d.k - d.k2)) / d.beta;
    const double bound =
        dmax + std::sqrt(d.m_star_sq() * dmax * dmax + d.k2 + 2.0 * d.abs_ell0() * dmax) / d.mach();
    const double reach = 2.0 * bound + 1.0 + std::abs(tp.xi_star_plus) + std::abs(tp.xi_star_minus);

    auto g = [&](double xi) {
        const cplx s(0.0, xi);
        const cplx lam = lambda_pair(d, s, w).plus;
        return std::real(reduced_residual(d, s, w, lam).determinant);
    };
    auto hit_at = [&](double xi, RootBranch branch) {
        const cplx s(0.0, xi);
        const cplx lam = lambda_pair(d, s, w).plus;
        return BoundaryLineHit{xi, lam, branch, reduced_residual(d, s, w, lam).normalized_max()};
    };

    std::vector<BoundaryLineHit> hits;
    auto scan_segment = [&](double a, double b, RootBranch branch) {
        const int n = std::max(samples / 2, 8);
        double prev_x = a;
        double prev_g = g(a);
        if (std::abs(prev_g) <= 1e-12 * (1.0 + std::abs(d.k))) {
            hits.push_back(hit_at(a, branch));
            return;
        }
        for (int k = 1; k <= n; ++k) {
            const double x = a + (b - a) * k / n;
            const double gx = g(x);
            if ((prev_g < 0.0) != (gx < 0.0)) {
                hits.push_back(hit_at(solve_bracketed(g, std::min(prev_x, x), std::max(prev_x, x)), branch));
            }
            prev_x = x;
            prev_g = gx;
        }
    };
    // Outside (xi*-, xi*+) the limiting Hersh root is purely imaginary and the
    // residual is real; strictly between them no purely imaginary lambda exists.
    scan_segment(tp.xi_star_plus, tp.xi_star_plus + reach, RootBranch::Plus);
    scan_segment(tp.xi_star_minus, tp.xi_star_minus - reach, RootBranch::Minus);
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.xi < b.xi; });
    return hits;
}

ScanResidual default_scan_residual() {
    ScanResidual r;
    r.value = [](const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
        return reduced_residual(d, s, omega, lambda).determinant;
    };
    r.scale = [](const DerivedQuantities& d, cplx s, double omega, cplx lambda) {
        return reduced_residual(d, s, omega, lambda).determinant_scale;
    };
    return r;
}

InteriorScan scan_interior_roots(const DerivedQuantities& d, const ScanOptions& opt, const ScanResidual& residual) {
    if (!(opt.eta_min > 0.0) || !(opt.eta_max > opt.eta_min) || !(opt.xi_max > 0.0) || opt.n_eta < 2 ||
        opt.n_xi < 2) {
        throw std::invalid_argument("scan_interior_roots: empty or invalid search region");
    }
    const double w = reduced_frame_omega(d);

    auto normalized = [&](cplx s) {
        const cplx lam = lambda_pair(d, s, w).plus;
        const double sc = residual.scale(d, s, w, lam);
        const double v = std::abs(residual.value(d, s, w, lam));
        return sc > 0.0 ? v / sc : v;
    };
    auto raw = [&](cplx s) { return residual.value(d, s, w, lambda_pair(d, s, w).plus); };

    std::vector<double> etas(opt.n_eta);
    const double ratio = std::log(opt.eta_max / opt.eta_min);
    for (int i = 0; i < opt.n_eta; ++i) {
        etas[i] = opt.eta_min * std::exp(ratio * i / (opt.n_eta - 1));
    }
    std::vector<double> xis(opt.n_xi);
    for (int j = 0; j < opt.n_xi; ++j) {
        xis[j] = -opt.xi_max + 2.0 * opt.xi_max * j / (opt.n_xi - 1);
    }

    std::vector<double> grid(static_cast<std::size_t>(opt.n_eta) * opt.n_xi);
    parallel_for(static_cast<std::size_t>(opt.n_eta), [&](std::size_t i) {
        for (int j = 0; j < opt.n_xi; ++j) {
            grid[i * opt.n_xi + j] = normalized(cplx(etas[i], xis[j]));
        }
    });
    auto at = [&](int i, int j) { return grid[static_cast<std::size_t>(i) * opt.n_xi + j]; };

    InteriorScan out;
    out.min_grid_residual = *std::min_element(grid.begin(), grid.end());

    std::vector<Cell> minima;
    for (int i = 0; i < opt.n_eta; ++i) {
        for (int j = 0; j < opt.n_xi; ++j) {
            const double v = at(i, j);
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di, jj = j + dj;
                    if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= opt.n_eta || jj >= opt.n_xi) continue;
                    if (at(ii, jj) < v) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (is_min) minima.push_back({v, i, j});
        }
    }
    std::sort(minima.begin(), minima.end(), [](const Cell& a, const Cell& b) {
        return a.value != b.value ? a.value < b.value : (a.i != b.i ? a.i < b.i : a.j < b.j);
    });
    if (static_cast<int>(minima.size()) > opt.seeds) minima.resize(opt.seeds);

    std::vector<std::optional<cplx>> refined(minima.size());
    parallel_for(minima.size(), [&](std::size_t k) {
        cplx s(etas[minima[k].i], xis[minima[k].j]);
        const double floor = 0.5 * opt.eta_min;
        cplx f = raw(s);
        double nf = normalized(s);
        for (int it = 0; it < opt.max_newton && nf > opt.newton_tol; ++it) {
            const double h = 1e-7 * (1.0 + std::abs(s));
            const double hh = std::min(h, 0.5 * (std::real(s) - floor));
            if (!(hh > 0.0)) return;
            const cplx df = (raw(s + hh) - raw(s - hh)) / (2.0 * hh);
            if (df == cplx(0.0)) return;
            cplx step = f / df;
            bool moved = false;
            for (int damp = 0; damp < 30; ++damp) {
                const cplx next = s - step;
                if (std::real(next) > floor) {
                    const double nn = normalized(next);
                    if (nn < nf) {
                        s = next;
                        nf = nn;
                        f = raw(s);
                        moved = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        if (nf <= opt.accept_tol && std::real(s) > opt.eta_min) refined[k] = s;
    });

    for (const auto& s : refined) {
        if (!s) continue;
        const bool dup = std::any_of(out.roots.begin(), out.roots.end(), [&](const RootRecord& r) {
            return std::abs(r.s - *s) <= 1e-6 * (1.0 + std::abs(*s));
        });
        if (dup) continue;
        const cplx lam = lambda_pair(d, *s, w).plus;
        RootRecord rec = make_record(d, *s, lam, RootKind::Interior, RootBranch::Plus);
        rec.residual_determinant = residual.value(d, *s, w, lam);
        out.roots.push_back(rec);
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const RootRecord& a, const RootRecord& b) {
        return std::real(a.s) != std::real(b.s) ? std::real(a.s) < std::real(b.s) : std::imag(a.s) < std::imag(b.s);
    });

    if (opt.winding) {
        out.winding_count = winding_number(raw, Rect{opt.eta_min, opt.eta_max, -opt.xi_max, opt.xi_max},
                                           opt.winding_samples);
    }
    return out;
}

int winding_number(const std::function<cplx(cplx)>& f, const Rect& rect, int samples_per_side) {
    const cplx corners[4] = {cplx(rect.eta_lo, rect.xi_lo), cplx(rect.eta_hi, rect.xi_lo), cplx(rect.eta_hi, rect.xi_hi),
                             cplx(rect.eta_lo, rect.xi_hi)};
    const double quarter = std::numbers::pi / 4.0;

    auto value = [&](cplx z) {
        const cplx v = f(z);
        if (v == cplx(0.0) || !std::isfinite(std::abs(v))) {
            throw Error("winding_number: function vanishes or is not finite on the contour");
        }
        return v;
    };

    // Change of arg f from a to b, bisecting until each step is small.
    std::function<double(cplx, cplx, cplx, cplx, int)> arc = [&](cplx a, cplx b, cplx fa, cplx fb, int depth) {
        const double step = std::arg(fb / fa);
        if (std::abs(step) < quarter || depth >= 40) return step;
        const cplx mid = 0.5 * (a + b);
        const cplx fm = value(mid);
        return arc(a, mid, fa, fm, depth + 1) + arc(mid, b, fm, fb, depth + 1);
    };

    double total = 0.0;
    const int n = std::max(samples_per_side, 4);
    for (int side = 0; side < 4; ++side) {
        const cplx a = corners[side];
        const cplx b = corners[(side + 1) % 4];
        cplx prev = a;
        cplx fprev = value(a);
        for (int k = 1; k <= n; ++k) {
            const cplx z = a + (b - a) * (static_cast<double>(k) / n);
            const cplx fz = value(z);
            total += arc(prev, z, fprev, fz, 0);
            prev = z;
            fprev = fz;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace loplab

#include "fracsem/frac_operator.hpp"

#include "fracsem/error.hpp"
#include "fracsem/numerics.hpp"
#include "sphere_rule.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace fracsem {

namespace {

// sum_{m in Z} |r + P m|^{-sigma} for 0 < r < P
double lattice_kernel(double r, double period, double sigma) {
    gsl_sf_result a;
    gsl_sf_result b;
    const int ea = gsl_sf_hzeta_e(sigma, r / period, &a);
    const int eb = gsl_sf_hzeta_e(sigma, 1.0 - r / period, &b);
    if (ea != GSL_SUCCESS || eb != GSL_SUCCESS) {
        throw Error(ErrorCode::non_convergence, "Hurwitz zeta evaluation failed");
    }
    return std::pow(period, -sigma) * (a.val + b.val);
}

// GSL reports failures through status codes instead of aborting
[[maybe_unused]] const gsl_error_handler_t* const kPreviousHandler = gsl_set_error_handler_off();

double lattice_zeta(double sigma) {
    gsl_sf_result z;
    if (gsl_sf_zeta_e(sigma, &z) != GSL_SUCCESS) {
        throw Error(ErrorCode::non_convergence, "Riemann zeta evaluation failed");
    }
    return z.val;
}

// int_lo^hi f(r) dr with log panels below `knee` and linear panels above;
// returns the order-16 value and its difference from order 24.
std::pair<double, double> radial_integral(const std::function<double(double)>& f, double lo, double hi,
                                          double knee, double linear_panel, std::span<const double> breaks) {
    double v16 = 0.0;
    double v24 = 0.0;
    const double mid = std::clamp(knee, lo, hi);
    if (mid > lo) {
        const auto g = [&](double tau) {
            const double r = std::exp(tau);
            return f(r) * r;
        };
        v16 += integrate_panels(g, std::log(lo), std::log(mid), 0.5, 16);
        v24 += integrate_panels(g, std::log(lo), std::log(mid), 0.5, 24);
    }
    if (hi > mid) {
        v16 += integrate_panels(f, mid, hi, linear_panel, 16, breaks);
        v24 += integrate_panels(f, mid, hi, linear_panel, 24, breaks);
    }
    return {v24, std::abs(v24 - v16)};
}

PointwiseResult periodic_1d(const AnalyticField& u, double x0, FracOrder s, const PointwiseOptions& opt) {
    const double period = *u.period;
    const double e = s.s();
    const double sigma = 1.0 + 2.0 * e;
    const double c = c_ns(1, s);
    const double eps = std::isnan(opt.eps) ? 1e-3 * u.feature_scale : opt.eps;
    if (!(eps > 0.0 && eps < 0.5 * period)) {
        throw Error(ErrorCode::validation, "pointwise eps must lie in (0, period/2)");
    }
    const std::array<double, 1> xa{x0};
    const double ux = u(xa);
    // pairing z and 2x - z is the compensated form: the gradient term cancels exactly
    const auto integrand = [&](double r) {
        const std::array<double, 1> zp{x0 + r};
        const std::array<double, 1> zm{x0 - r};
        return (2.0 * ux - u(zp) - u(zm)) * lattice_kernel(r, period, sigma);
    };
    const std::array<double, 1> brk{opt.delta};
    const auto [integral, qerr] =
        radial_integral(integrand, eps, 0.5 * period, u.feature_scale, u.feature_scale / 4.0, brk);

    PointwiseResult out;
    const double smooth0 = 2.0 * std::pow(period, -sigma) * lattice_zeta(sigma);
    double inner = 0.0;
    if (u.laplacian) {
        const double lap = (*u.laplacian)(xa);
        inner = -lap * (std::pow(eps, 2.0 - 2.0 * e) / (2.0 - 2.0 * e) + smooth0 * eps * eps * eps / 3.0);
        out.inner_bound = c * std::abs(inner) * (eps / u.feature_scale) * (eps / u.feature_scale);
    } else {
        const double hb = std::isnan(u.hessian_bound) ? 0.0 : u.hessian_bound;
        out.inner_bound = 0.5 * hb * c * 2.0 * std::pow(eps, 2.0 - 2.0 * e) / (2.0 - 2.0 * e);
        if (std::isnan(u.hessian_bound)) {
            out.inner_bound = std::numeric_limits<double>::infinity();
        }
    }
    out.value = c * (integral + inner);
    out.quadrature_error = c * qerr;
    return out;
}

}  // namespace

PointwiseResult frac_apply_pointwise(const AnalyticField& u, std::span<const double> x, FracOrder s,
                                     const PointwiseOptions& opt) {
    s.require_operator_range();
    const int n = u.n;
    if (static_cast<int>(x.size()) != n) {
        throw Error(ErrorCode::validation, "probe point dimension mismatch");
    }
    if (!(opt.delta > 0.0)) {
        throw Error(ErrorCode::validation, "compensation radius must be positive");
    }
    if (!std::isfinite(ls_norm(u, s.s()))) {
        throw Error(ErrorCode::tail_bound, "fixture '" + u.name + "' is not in L_s for this s");
    }

    PointwiseResult out;
    if (u.period) {
        if (n != 1) {
            throw Error(ErrorCode::unsupported, "pointwise route for periodic fields is one-dimensional");
        }
        out = periodic_1d(u, x[0], s, opt);
    } else {
        const double e = s.s();
        const double c = c_ns(n, s);
        const double area = sphere_area(n);
        double xnorm = 0.0;
        for (double v : x) {
            xnorm += v * v;
        }
        xnorm = std::sqrt(xnorm);
        const bool compact = std::isfinite(u.support_radius);
        const double scale = compact ? u.support_radius : u.feature_scale;
        const double eps = std::isnan(opt.eps) ? 1e-3 * std::min(scale, u.feature_scale) : opt.eps;
        const double reach = compact ? u.support_radius * std::sqrt(double(n)) + xnorm : 0.0;
        const double R = std::isnan(opt.R) ? (compact ? reach : 1e3 * u.feature_scale + xnorm) : opt.R;
        if (!(eps > 0.0 && eps < R)) {
            throw Error(ErrorCode::validation, "pointwise route needs 0 < eps < R");
        }

        const detail::SphereRule dirs = detail::sphere_rule(n, 64);
        const double ux = u(x);
        Point grad{0.0, 0.0, 0.0};
        const bool compensate = e >= 0.5 && u.gradient.has_value();
        if (compensate) {
            (*u.gradient)(x, std::span<double>(grad.data(), n));
        }
        const auto shell = [&](double r) {
            double acc = 0.0;
            Point z{0.0, 0.0, 0.0};
            for (std::size_t d = 0; d < dirs.dirs.size(); ++d) {
                double lin = 0.0;
                for (int a = 0; a < n; ++a) {
                    z[a] = x[a] + r * dirs.dirs[d][a];
                    lin += grad[a] * r * dirs.dirs[d][a];
                }
                double term = ux - u.at(z);
                if (compensate && r < opt.delta) {
                    term += lin;
                }
                acc += dirs.weights[d] * term;
            }
            return acc * std::pow(r, -1.0 - 2.0 * e);
        };
        std::vector<double> breaks{opt.delta, xnorm};
        if (compact) {
            breaks.push_back(std::abs(xnorm - u.support_radius));
            breaks.push_back(xnorm + u.support_radius);
        }
        std::sort(breaks.begin(), breaks.end());
        const double knee = std::min(u.feature_scale, R);
        const auto [integral, qerr] = radial_integral(shell, eps, R, knee, u.feature_scale / 4.0, breaks);

        double inner = 0.0;
        if (u.laplacian) {
            inner = -area * (*u.laplacian)(x) / (2.0 * n) * std::pow(eps, 2.0 - 2.0 * e) / (2.0 - 2.0 * e);
            out.inner_bound = c * std::abs(inner) * (eps / u.feature_scale) * (eps / u.feature_scale);
        } else if (!std::isnan(u.hessian_bound)) {
            out.inner_bound = 0.5 * u.hessian_bound * c * area * std::pow(eps, 2.0 - 2.0 * e) / (2.0 - 2.0 * e);
        } else {
            out.inner_bound = std::numeric_limits<double>::infinity();
        }

        // beyond R: u(x) contributes exactly, u(z) through its mean plus a bound
        const double tail_exact = area * (ux - u.mean_at_infinity) * std::pow(R, -2.0 * e) / (2.0 * e);
        if (!(compact && R >= reach)) {
            const double inner_radius = std::max(0.0, R - xnorm);
            const double factor = (1.0 + std::pow(R + xnorm, n + 2.0 * e)) / std::pow(R, n + 2.0 * e);
            if (u.decay.kind == Decay::Kind::bounded) {
                out.tail_bound = std::numeric_limits<double>::infinity();
            } else {
                out.tail_bound = c * factor * ls_norm(u, e, inner_radius);
            }
        }
        out.value = c * (integral + inner + tail_exact);
        out.quadrature_error = c * qerr;
    }
    if (out.inner_bound + out.tail_bound > opt.tolerance) {
        throw Error(ErrorCode::remainder_too_large,
                    "pointwise remainder estimate " + std::to_string(out.inner_bound + out.tail_bound) +
                        " exceeds tolerance " + std::to_string(opt.tolerance));
    }
    return out;
}

}  // namespace fracsem

#include "fracsem/heat.hpp"

#include "fracsem/error.hpp"
#include "fracsem/numerics.hpp"
#include "fracsem/quadrature.hpp"
#include "fracsem/spectral.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>

namespace fracsem {

namespace {

// Gaussian tail beyond rho = kWindowRho carries relative mass below 1e-30.
constexpr double kWindowRho = 70.0;
constexpr std::size_t kMaxNodes = 4'000'000;

double poly(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Composite Gauss-Legendre on [a, b] with a break at `c` (the image of the
// origin), fine panels within `fine_half` of it and geometric growth beyond.
AxisRule axis_rule(double a, double b, double c, double fine_half, double base, double cap) {
    AxisRule rule;
    if (!(b > a)) {
        return rule;
    }
    const auto& gl = gauss_legendre(16);
    double p = a;
    while (p < b) {
        const double d = std::abs(p - c);
        double w = std::min(cap, std::max(base, 0.2 * std::max(0.0, d - fine_half)));
        if (p < c) {
            w = std::min(w, c - p);
        }
        double q = std::min(b, p + w);
        if (b - q < 1e-3 * w) {
            q = b;
        }
        const double mid = 0.5 * (p + q);
        const double half = 0.5 * (q - p);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            rule.nodes.push_back(mid + half * gl.nodes[i]);
            rule.weights.push_back(half * gl.weights[i]);
        }
        p = q;
    }
    return rule;
}

// One-dimensional Gaussian mass of [a, b] for variance 2t, and the mass
// outside it, each computed without cancellation.
double outside_mass(double a, double b, double t) {
    const double sc = 1.0 / std::sqrt(4.0 * t);
    return 0.5 * (std::erfc(b * sc) + std::erfc(-a * sc));
}

// GSL reports failures through status codes instead of aborting
[[maybe_unused]] const gsl_error_handler_t* const kPreviousHandler = gsl_set_error_handler_off();

// e^{t Delta} u(rho) for a radial u in two or three dimensions, as a
// one-dimensional integral against the angular average of the kernel.
double radial_heat(const AnalyticField& u, double rho, double t, bool difference) {
    const auto& p = *u.radial_profile;
    const int n = u.n;
    const double s4t = std::sqrt(4.0 * t);
    const double reach = std::isfinite(u.support_radius) ? u.support_radius * std::sqrt(double(n))
                                                         : std::numeric_limits<double>::infinity();
    const double lo = std::max(0.0, rho - s4t * std::sqrt(kWindowRho));
    const double hi = std::min(reach, rho + s4t * std::sqrt(kWindowRho));
    const double u0 = p(rho);
    auto weight = [&](double r) {
        const double g = std::exp(-(rho - r) * (rho - r) / (4.0 * t));
        if (n == 2) {
            // (r/2t) e^{-(r - rho)^2/4t} e^{-z} I_0(z), z = r rho / 2t
            gsl_sf_result i0;
            if (gsl_sf_bessel_I0_scaled_e(r * rho / (2.0 * t), &i0) != GSL_SUCCESS) {
                throw Error(ErrorCode::non_convergence, "Bessel I0 evaluation failed");
            }
            return r / (2.0 * t) * g * i0.val;
        }
        // (4 pi t)^{-1/2} r/rho [e^{-(rho - r)^2/4t} - e^{-(rho + r)^2/4t}], with the rho -> 0 limit
        const double pref = 1.0 / std::sqrt(4.0 * kPi * t);
        if (rho == 0.0) {
            return pref * g * r * r / t;
        }
        return pref * r / rho * g * (-std::expm1(-rho * r / t));
    };
    const double width = std::min(std::sqrt(2.0 * t), u.feature_scale / 2.0);
    const std::array<double, 1> brk{rho};
    std::span<const double> breaks;
    if (rho > lo && rho < hi) {
        breaks = brk;
    }
    if (!(hi > lo)) {
        return difference ? -u0 : 0.0;
    }
    if (difference) {
        // the kernel integrates to 1 over r in (0, inf); account for the part
        // of that mass outside [lo, hi] with u = 0 there
        const double inside =
            integrate_panels([&](double r) { return weight(r) * (p(r) - u0); }, lo, hi, width, 16, breaks);
        const double mass_in = integrate_panels(weight, lo, hi, width, 16, breaks);
        return inside - u0 * (1.0 - mass_in);
    }
    return integrate_panels([&](double r) { return weight(r) * p(r); }, lo, hi, width, 16, breaks);
}

}  // namespace

void HeatEvaluation::validate() const {
    if (k < 0) {
        throw Error(ErrorCode::validation, "heat derivative order must be >= 0");
    }
    if (k == 0 ? !(t >= 0.0) : !(t > 0.0)) {
        throw Error(ErrorCode::domain, "heat time must be positive (or zero for k = 0)");
    }
}

double gauss_weierstrass(std::span<const double> x, double t) {
    if (!(t > 0.0)) {
        throw Error(ErrorCode::domain, "heat kernel needs t > 0");
    }
    double r2 = 0.0;
    for (double v : x) {
        r2 += v * v;
    }
    return std::pow(4.0 * kPi * t, -0.5 * static_cast<double>(x.size())) * std::exp(-r2 / (4.0 * t));
}

std::vector<double> heat_derivative_polynomial(int n, int k) {
    // Q_0 = 1, Q_{k+1} = (rho - n/2 - k) Q_k - rho Q_k'
    std::vector<double> q{1.0};
    for (int j = 0; j < k; ++j) {
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i + 1] += q[i];
            next[i] += (-0.5 * n - j) * q[i];
            next[i] -= static_cast<double>(i) * q[i];
        }
        q = std::move(next);
    }
    return q;
}

double heat_kernel_derivative(std::span<const double> x, double t, int k) {
    if (k < 0) {
        throw Error(ErrorCode::validation, "derivative order must be >= 0");
    }
    double r2 = 0.0;
    for (double v : x) {
        r2 += v * v;
    }
    const auto q = heat_derivative_polynomial(static_cast<int>(x.size()), k);
    return gauss_weierstrass(x, t) * std::pow(t, -k) * poly(q, r2 / (4.0 * t));
}

GridField heat_apply(const GridField& u, double t, int k) {
    HeatEvaluation{t, k, HeatRoute::spectral_multiplier}.validate();
    if (t == 0.0 && k == 0) {
        return u;
    }
    return apply_radial_multiplier(u, [t, k](double xi2) {
        return std::pow(-xi2, k) * std::exp(-t * xi2);
    });
}

double heat_apply_analytic(const AnalyticField& u, std::span<const double> x, double t, int k, bool difference) {
    HeatEvaluation{t, k, HeatRoute::kernel_convolution}.validate();
    if (difference && k != 0) {
        throw Error(ErrorCode::validation, "difference form is defined for k = 0 only");
    }
    const int n = u.n;
    if (static_cast<int>(x.size()) != n) {
        throw Error(ErrorCode::validation, "probe point dimension mismatch");
    }
    if (t == 0.0) {
        return difference ? 0.0 : u(x);
    }
    const double p = u.decay.effective_power();
    if (u.decay.kind == Decay::Kind::tail_power && p < 0.0 && -p >= 2.0) {
        // growth faster than quadratic still convolves against a Gaussian, but
        // the window estimate below assumes at most polynomial growth of low degree
        throw Error(ErrorCode::tail_bound, "tail growth too fast for the kernel window bound");
    }
    if (u.period) {
        // beyond this time every nonconstant mode has decayed below e^{-80}
        const double lowest = 2.0 * kPi / *u.period;
        if (t * lowest * lowest > 80.0) {
            if (k > 0) {
                return 0.0;
            }
            return difference ? u.mean_at_infinity - u(x) : u.mean_at_infinity;
        }
    }
    if (n >= 2 && k == 0 && u.radial_profile) {
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) {
            r2 += x[a] * x[a];
        }
        return radial_heat(u, std::sqrt(r2), t, difference);
    }

    const double cut = std::sqrt(4.0 * t * (kWindowRho + 4.0 * k));
    const double support = u.support_radius;
    const double base = std::min(std::sqrt(2.0 * t), u.feature_scale / 2.0);
    const double cap = std::sqrt(2.0 * t);
    const double fine_half = 40.0 * u.feature_scale;
    std::array<AxisRule, 3> rules;
    std::array<double, 3> lo{}, hi{};
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) {
        lo[a] = -cut;
        hi[a] = cut;
        if (std::isfinite(support)) {
            lo[a] = std::max(lo[a], -support - x[a]);
            hi[a] = std::min(hi[a], support - x[a]);
        }
        rules[a] = axis_rule(lo[a], hi[a], -x[a], fine_half, base, cap);
        total *= std::max<std::size_t>(rules[a].nodes.size(), 1);
        if (rules[a].nodes.empty()) {
            total = 0;
        }
    }
    if (total > kMaxNodes) {
        throw Error(ErrorCode::unsupported, "heat kernel quadrature exceeds the node budget (" +
                                                std::to_string(total) + " nodes)");
    }
    const double ux = (difference || k > 0) ? u(x) : 0.0;
    const auto q = heat_derivative_polynomial(n, k);
    const double norm = std::pow(4.0 * kPi * t, -0.5 * n) * std::pow(t, -k);

    double acc = 0.0;
    double mass = 0.0;
    std::array<std::size_t, 3> idx{0, 0, 0};
    Point z{0.0, 0.0, 0.0};
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        double w = 1.0;
        double r2 = 0.0;
        for (int a = n - 1; a >= 0; --a) {
            const std::size_t count = rules[a].nodes.size();
            idx[a] = rem % count;
            rem /= count;
            const double y = rules[a].nodes[idx[a]];
            w *= rules[a].weights[idx[a]];
            r2 += y * y;
            z[a] = x[a] + y;
        }
        const double rho = r2 / (4.0 * t);
        const double kern = norm * std::exp(-rho) * poly(q, rho) * w;
        const double uz = u.at(z);
        if (difference || k > 0) {
            acc += kern * (uz - ux);
        } else {
            acc += kern * uz;
        }
        mass += kern;
    }
    if (k > 0) {
        // int d^k G = 0 over R^n; the window and support clip remove only the part where u = 0
        return acc + ux * mass;
    }
    if (difference) {
        // u = 0 outside the clipped window, so that region contributes -u(x) times its kernel mass
        double log_inside = 0.0;
        for (int a = 0; a < n; ++a) {
            log_inside += std::log1p(-outside_mass(lo[a], hi[a], t));
        }
        return acc - ux * (-std::expm1(log_inside));
    }
    return acc;
}

}  // namespace fracsem

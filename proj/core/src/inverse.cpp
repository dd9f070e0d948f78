#include "fracsem/inverse.hpp"

#include "fracsem/error.hpp"
#include "fracsem/heat.hpp"
#include "fracsem/numerics.hpp"
#include "fracsem/spectral.hpp"
#include "sphere_rule.hpp"

#include <cmath>

namespace fracsem {

namespace {

void require_inverse_order(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw Error(ErrorCode::domain, "inverse order must be positive");
    }
}

bool is_log_case(int n, double s) { return std::abs(s - 0.5 * n) <= 1e-14 * n; }

}  // namespace

InverseGridResult frac_inverse_spectral(const GridField& f, double s) {
    require_inverse_order(s);
    Spectrum sp(f);
    const double mean = sp.mean();
    sp.apply_radial([s](double xi2) { return xi2 == 0.0 ? 0.0 : std::pow(xi2, -s); });
    return {sp.to_field(f.source()), mean, 0.0};
}

InverseGridResult frac_inverse_semigroup(const GridField& f, double s, const QuadratureSpec& spec) {
    require_inverse_order(s);
    Spectrum sp(f);
    const double mean = sp.mean();
    const std::vector<double>& xi2 = sp.distinct_xi2();
    const VectorIntegrand integrand = [&xi2](double t, std::span<double> out) {
        for (std::size_t i = 0; i < xi2.size(); ++i) {
            out[i] = xi2[i] == 0.0 ? 0.0 : std::exp(-t * xi2[i]);
        }
    };
    MellinTails tails;
    tails.small_t_power = 0.0;
    const MellinVectorResult r = integrate_mellin(integrand, xi2.size(), -s, spec, tails);
    const double g = gamma(s);
    std::vector<double> multiplier(r.value.size());
    for (std::size_t i = 0; i < multiplier.size(); ++i) {
        multiplier[i] = r.value[i] / g;
    }
    double l1 = 0.0;
    const auto c = sp.coefficients();
    for (std::size_t i = 1; i < c.size(); ++i) {
        l1 += sp.multiplicity(i) * std::abs(c[i]);
    }
    l1 /= static_cast<double>(f.size());
    sp.apply_distinct(multiplier);
    return {sp.to_field(f.source()), mean, r.error_estimate / g * l1};
}

double field_mass(const AnalyticField& f) {
    const int n = f.n;
    if (f.fourier) {
        const std::array<double, 3> zero{0.0, 0.0, 0.0};
        return (*f.fourier)(std::span<const double>(zero.data(), n));
    }
    if (!std::isfinite(f.support_radius)) {
        throw Error(ErrorCode::unsupported, "mass needs compact support or a known Fourier transform");
    }
    const double S = f.support_radius;
    const double panel = f.feature_scale / 2.0;
    if (f.radial_profile) {
        const double reach = S * std::sqrt(double(n));
        return sphere_area(n) *
               integrate_panels([&](double r) { return (*f.radial_profile)(r) * std::pow(r, n - 1); }, 0.0, reach,
                                panel, 16);
    }
    // tensor product over the support box, one axis at a time
    std::function<double(int, Point&)> nest = [&](int axis, Point& p) -> double {
        return integrate_panels(
            [&](double v) {
                p[axis] = v;
                return axis + 1 == n ? f.at(p) : nest(axis + 1, p);
            },
            -S, S, panel, 16);
    };
    Point p{0.0, 0.0, 0.0};
    return nest(0, p);
}

PointValue frac_inverse_semigroup(const AnalyticField& f, std::span<const double> x, double s,
                                  const QuadratureSpec& spec) {
    require_inverse_order(s);
    const int n = f.n;
    if (!std::isfinite(f.support_radius) && f.decay.kind != Decay::Kind::schwartz) {
        throw Error(ErrorCode::unsupported, "inverse semigroup route needs a compactly supported or Schwartz f");
    }
    const double mass = field_mass(f);
    const double scale = std::isnan(f.sup_norm) ? 1.0 : f.sup_norm;
    const bool zero_mean = std::abs(mass) <= 1e-10 * scale;
    // e^{t Delta} f(x) ~ mass (4 pi t)^{-n/2}, one power of t faster when the mass vanishes
    const double large_power = zero_mean ? -0.5 * n - 1.0 : -0.5 * n;
    if (large_power + s >= 0.0) {
        throw Error(ErrorCode::divergence,
                    "(-Delta)^{-s} f diverges: the t -> infinity tail is not integrable for this s and mass");
    }
    MellinTails tails;
    tails.small_t_power = 0.0;
    tails.large_t_power = large_power;
    tails.noise_floor = 1e-14 * scale;
    const auto integrand = [&](double t) { return heat_apply_analytic(f, x, t, 0, false); };
    const MellinResult r = integrate_mellin(integrand, -s, spec, tails);
    const double g = gamma(s);
    return {r.value / g, r.error_estimate / g};
}

double riesz_kernel(int n, double s, std::span<const double> x) {
    require_dimension(n);
    require_inverse_order(s);
    if (s > 0.5 * n * (1.0 + 1e-14)) {
        throw Error(ErrorCode::domain, "Riesz kernel needs s <= n/2");
    }
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) {
        r2 += x[a] * x[a];
    }
    if (r2 == 0.0) {
        throw Error(ErrorCode::domain, "Riesz kernel is singular at x = 0");
    }
    if (is_log_case(n, s)) {
        return (-std::log(r2) - kEulerGamma) / (gamma(0.5 * n) * std::pow(4.0 * kPi, 0.5 * n));
    }
    return c_n_negs(n, s) * std::pow(r2, -0.5 * (n - 2.0 * s));
}

PointValue riesz_convolve(const AnalyticField& f, std::span<const double> x, double s) {
    require_inverse_order(s);
    const int n = f.n;
    if (s > 0.5 * n * (1.0 + 1e-14)) {
        throw Error(ErrorCode::domain, "Riesz potential needs s <= n/2");
    }
    if (!std::isfinite(f.support_radius)) {
        throw Error(ErrorCode::unsupported, "riesz_convolve needs a compactly supported f");
    }
    const bool log_case = is_log_case(n, s);
    if (log_case) {
        const double mass = field_mass(f);
        const double scale = std::isnan(f.sup_norm) ? 1.0 : f.sup_norm;
        if (std::abs(mass) > 1e-10 * scale) {
            throw Error(ErrorCode::zero_mean_violation,
                        "s = n/2 needs a zero-mean f, got mass " + std::to_string(mass));
        }
    }
    // radial kernel k(r) r^{n-1} and its integral from 0 to d
    const double area = sphere_area(n);
    const double c_log = 1.0 / (gamma(0.5 * n) * std::pow(4.0 * kPi, 0.5 * n));
    const double c_pow = log_case ? 0.0 : c_n_negs(n, s);
    const auto kernel_r = [&](double r) {
        if (log_case) {
            return c_log * (-2.0 * std::log(r) - kEulerGamma) * std::pow(r, n - 1);
        }
        return c_pow * std::pow(r, 2.0 * s - 1.0);
    };
    const auto kernel_integral = [&](double d) {
        if (log_case) {
            // int_0^d (-2 log r - gamma) r^{n-1} dr
            return c_log * (-2.0 * (std::pow(d, n) * std::log(d) / n - std::pow(d, n) / (n * n)) -
                            kEulerGamma * std::pow(d, n) / n);
        }
        return c_pow * std::pow(d, 2.0 * s) / (2.0 * s);
    };

    double xnorm = 0.0;
    for (int a = 0; a < n; ++a) {
        xnorm += x[a] * x[a];
    }
    xnorm = std::sqrt(xnorm);
    const double R = f.support_radius * std::sqrt(double(n)) + xnorm;

    const detail::SphereRule rule = detail::sphere_rule(n, n == 2 ? 128 : 48);
    const auto& dirs = rule.dirs;
    const auto& weights = rule.weights;
    const auto shell = [&](double r) {
        double acc = 0.0;
        Point z{0.0, 0.0, 0.0};
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            for (int a = 0; a < n; ++a) {
                z[a] = x[a] + r * dirs[d][a];
            }
            acc += weights[d] * f.at(z);
        }
        return acc;
    };
    const double knee = std::min(f.feature_scale, R);
    constexpr double kDepth = 1e-12;
    // graded toward r = 0 on [0, knee], the innermost piece with f frozen at x
    const auto inner_f = [&](double r) { return kernel_r(r) * shell(r); };
    double value = integrate_graded(inner_f, 0.0, knee, 16, kDepth);
    value += area * f.at(Point{x[0], n > 1 ? x[1] : 0.0, n > 2 ? x[2] : 0.0}) * kernel_integral(kDepth * knee);
    std::vector<double> breaks{std::abs(xnorm - f.support_radius), xnorm + f.support_radius, xnorm};
    const double v16 = integrate_panels(inner_f, knee, R, f.feature_scale / 4.0, 16, breaks);
    const double v24 = integrate_panels(inner_f, knee, R, f.feature_scale / 4.0, 24, breaks);
    value += v24;
    return {value, std::abs(v24 - v16)};
}

}  // namespace fracsem

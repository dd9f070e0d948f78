#include "fracsem/frac_operator.hpp"

#include "fracsem/error.hpp"
#include "fracsem/heat.hpp"
#include "fracsem/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace fracsem {

void FracRoute::validate() const {
    spec.validate();
    if (kind == FracRouteKind::pointwise_integral && !std::isnan(eps) && !std::isnan(R)) {
        if (!(eps > 0.0 && eps < R)) {
            throw Error(ErrorCode::validation, "pointwise route needs 0 < eps < R");
        }
    }
}

GridField frac_apply_spectral(const GridField& u, FracOrder s) {
    // s = 1 is -Delta itself, kept so that powers compose up to the endpoint
    if (s.s() > 1.0) {
        s.require_operator_range();
    }
    const double e = s.s();
    return apply_radial_multiplier(u, [e](double xi2) { return xi2 == 0.0 ? 0.0 : std::pow(xi2, e); });
}

namespace {

double spectral_l1(const Spectrum& sp) {
    double acc = 0.0;
    const auto c = sp.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += sp.multiplicity(i) * std::abs(c[i]);
    }
    double count = 1.0;
    for (int a = 0; a < sp.n(); ++a) {
        count *= sp.points_per_axis();
    }
    return acc / count;
}

}  // namespace

GridRouteResult frac_apply_semigroup(const GridField& u, FracOrder s, const QuadratureSpec& spec) {
    s.require_operator_range();
    Spectrum sp(u);
    const std::vector<double>& xi2 = sp.distinct_xi2();
    const VectorIntegrand integrand = [&xi2](double t, std::span<double> out) {
        for (std::size_t i = 0; i < xi2.size(); ++i) {
            out[i] = std::expm1(-t * xi2[i]);
        }
    };
    // e^{-t xi^2} - 1 ~ -t xi^2 as t -> 0 and -> -1 as t -> infinity
    const MellinVectorResult r = integrate_mellin(integrand, xi2.size(), s.s(), spec, MellinTails{1.0, 0.0});
    const double g = gamma(-s.s());
    std::vector<double> multiplier(r.value.size());
    for (std::size_t i = 0; i < multiplier.size(); ++i) {
        multiplier[i] = r.value[i] / g;
    }
    const double l1 = spectral_l1(sp);
    sp.apply_distinct(multiplier);
    return {sp.to_field(u.source()), r.error_estimate / std::abs(g) * l1};
}

PointValue frac_apply_semigroup(const AnalyticField& u, std::span<const double> x, FracOrder s,
                                const QuadratureSpec& spec) {
    s.require_operator_range();
    if (!std::isfinite(ls_norm(u, s.s()))) {
        throw Error(ErrorCode::tail_bound, "fixture '" + u.name + "' is not in L_s for this s");
    }
    // Below t ~ 1e-6 feature^2 the kernel difference is dominated by rounding;
    // the linear small-t model t Delta u(x) takes over from there.
    QuadratureSpec window = spec;
    window.tau_min = std::max(spec.tau_min, std::log(1e-6 * u.feature_scale * u.feature_scale));
    if (!(window.tau_min < window.tau_max)) {
        throw Error(ErrorCode::validation, "quadrature window lies below the resolvable small-t range");
    }
    const double g = gamma(-s.s());
    const double p = u.decay.effective_power();
    const bool decaying = !u.period && u.mean_at_infinity == 0.0 && p > 0.0;
    if (!decaying) {
        const auto integrand = [&](double t) { return heat_apply_analytic(u, x, t, 0, true); };
        const MellinResult r = integrate_mellin(integrand, s.s(), window, MellinTails{1.0, 0.0});
        return {r.value / g, r.error_estimate / std::abs(g)};
    }
    // For decaying u, e^{t Delta}u(x) -> 0 and the -u(x) term is peeled off with
    // u(x)(1 - e^{-ct}), whose integral is -Gamma(-s) c^s u(x). What is left decays
    // like the heat kernel mass.
    const double ux = u(x);
    const double c = 1.0 / (u.feature_scale * u.feature_scale);
    const auto integrand = [&](double t) { return heat_apply_analytic(u, x, t, 0, true) - ux * std::expm1(-c * t); };
    MellinTails tails;
    tails.small_t_power = 1.0;
    tails.large_t_power = -0.5 * std::min(static_cast<double>(u.n), p);
    const MellinResult r = integrate_mellin(integrand, s.s(), window, tails);
    return {r.value / g + ux * std::pow(c, s.s()), r.error_estimate / std::abs(g)};
}

KernelIdentity kernel_identity_check(int n, FracOrder s, double r, const QuadratureSpec& spec) {
    require_dimension(n);
    s.require_operator_range();
    if (!(r > 0.0)) {
        throw Error(ErrorCode::domain, "kernel identity needs r > 0");
    }
    const std::array<double, 3> x{r, 0.0, 0.0};
    const auto integrand = [&](double t) { return gauss_weierstrass(std::span<const double>(x.data(), n), t); };
    MellinTails tails;
    tails.large_t_power = -0.5 * n;
    const MellinResult m = integrate_mellin(integrand, s.s(), spec, tails);
    KernelIdentity out;
    out.lhs = m.value / std::abs(gamma(-s.s()));
    out.rhs = c_ns(n, s) / std::pow(r, n + 2.0 * s.s());
    return out;
}

}  // namespace fracsem

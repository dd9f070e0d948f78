#pragma once

#include "fracsem/field.hpp"
#include "fracsem/numerics.hpp"
#include "fracsem/quadrature.hpp"

#include <limits>
#include <span>

namespace fracsem {

enum class FracRouteKind { spectral, semigroup, pointwise_integral, potential_kernel };

struct FracRoute {
    FracRouteKind kind = FracRouteKind::spectral;
    QuadratureSpec spec;
    double eps = std::numeric_limits<double>::quiet_NaN();
    double R = std::numeric_limits<double>::quiet_NaN();

    /// 0 < eps < R when both are set for the pointwise route.
    void validate() const;
};

/// Fourier multiplier |xi|^{2s}; the zero mode maps to 0. Accepts s = 1 (-Delta).
GridField frac_apply_spectral(const GridField& u, FracOrder s);

struct GridRouteResult {
    GridField field;
    /// Bound on the sup-norm change from quadrature error in the multipliers.
    double quadrature_error = 0.0;
};

/// (1/Gamma(-s)) int_0^inf (e^{t Delta}u - u) dt / t^{1+s}, with the heat
/// semigroup applied mode by mode and e^{-t|xi|^2} - 1 formed by expm1.
GridRouteResult frac_apply_semigroup(const GridField& u, FracOrder s, const QuadratureSpec& spec = {});

struct PointValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Same formula at one point with e^{t Delta}u(x) - u(x) from kernel quadrature.
PointValue frac_apply_semigroup(const AnalyticField& u, std::span<const double> x, FracOrder s,
                                const QuadratureSpec& spec = {});

struct KernelIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = (1/|Gamma(-s)|) int_0^inf G_t(r e_1) dt / t^{1+s}, rhs = c_{n,s} / r^{n+2s}.
KernelIdentity kernel_identity_check(int n, FracOrder s, double r, const QuadratureSpec& spec = {});

struct PointwiseOptions {
    /// Inner excision radius; default 1e-3 times the smaller of support radius and feature scale.
    double eps = std::numeric_limits<double>::quiet_NaN();
    /// Outer truncation radius; default covers the support, or 1e3 feature scales.
    double R = std::numeric_limits<double>::quiet_NaN();
    /// Radius of the gradient compensation ball used for s >= 1/2.
    double delta = 1.0;
    /// Largest acceptable inner-plus-outer remainder estimate.
    double tolerance = 1e-6;
};

struct PointwiseResult {
    double value = 0.0;
    double inner_bound = 0.0;  ///< Taylor bound for the excised ball
    double tail_bound = 0.0;   ///< bound for |z - x| > R beyond the analytic tail term
    double quadrature_error = 0.0;
};

/// c_{n,s} int (u(x) - u(z)) / |x - z|^{n+2s} dz in polar coordinates around x.
/// Periodic one-dimensional fields are integrated over one period against the
/// lattice-summed kernel.
PointwiseResult frac_apply_pointwise(const AnalyticField& u, std::span<const double> x, FracOrder s,
                                     const PointwiseOptions& options = {});

}  // namespace fracsem

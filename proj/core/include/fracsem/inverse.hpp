#pragma once

#include "fracsem/field.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/quadrature.hpp"

#include <span>

namespace fracsem {

struct InverseGridResult {
    GridField field;
    /// Mean of f removed before inversion (the torus has no inverse on constants).
    double removed_mean = 0.0;
    double quadrature_error = 0.0;
};

/// Multiplier |xi|^{-2s} on the nonzero modes; the zero mode is projected out.
InverseGridResult frac_inverse_spectral(const GridField& f, double s);

/// (1/Gamma(s)) int_0^inf e^{t Delta} P f dt / t^{1-s}, P the zero-mean projection,
/// applied mode by mode.
InverseGridResult frac_inverse_semigroup(const GridField& f, double s, const QuadratureSpec& spec = {});

/// Same formula at one point for a compactly supported bounded f on R^n, with
/// e^{t Delta} f(x) from kernel quadrature. Requires s < n/2, or s = n/2 when
/// f has zero mean; otherwise the t -> infinity tail diverges.
PointValue frac_inverse_semigroup(const AnalyticField& f, std::span<const double> x, double s,
                                  const QuadratureSpec& spec = {});

/// c_{n,-s} |x|^{-(n-2s)} for s < n/2, (Gamma(n/2)(4 pi)^{n/2})^{-1}(-2 log|x| - gamma) at s = n/2.
double riesz_kernel(int n, double s, std::span<const double> x);

/// int K_{-s}(x - z) f(z) dz over the support of f, with the weak singularity
/// at z = x resolved in polar coordinates.
PointValue riesz_convolve(const AnalyticField& f, std::span<const double> x, double s);

/// int f over R^n for a compactly supported or Fourier-known fixture.
double field_mass(const AnalyticField& f);

}  // namespace fracsem

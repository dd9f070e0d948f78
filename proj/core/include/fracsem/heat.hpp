#pragma once

#include "fracsem/field.hpp"

#include <span>
#include <vector>

namespace fracsem {

enum class HeatRoute { kernel_convolution, spectral_multiplier };

struct HeatEvaluation {
    double t = 0.0;
    int k = 0;
    HeatRoute route = HeatRoute::spectral_multiplier;

    /// t > 0 for k >= 1, t >= 0 for k = 0.
    void validate() const;
};

/// (4 pi t)^{-n/2} exp(-|x|^2 / 4t), n = x.size().
double gauss_weierstrass(std::span<const double> x, double t);

/// Coefficients (ascending powers of rho) of Q_k with
/// d^k/dt^k G_t(x) = G_t(x) t^{-k} Q_k(|x|^2 / 4t) in dimension n.
std::vector<double> heat_derivative_polynomial(int n, int k);

/// d^k/dt^k G_t(x).
double heat_kernel_derivative(std::span<const double> x, double t, int k);

/// Fourier multiplier (-|xi|^2)^k exp(-t |xi|^2). t = 0, k = 0 is the identity.
GridField heat_apply(const GridField& u, double t, int k = 0);

/// d^k/dt^k (G_t * u)(x) by kernel quadrature. With `difference` set (k = 0
/// only) returns e^{t Delta}u(x) - u(x) without forming the two terms separately.
double heat_apply_analytic(const AnalyticField& u, std::span<const double> x, double t, int k = 0,
                           bool difference = false);

}  // namespace fracsem

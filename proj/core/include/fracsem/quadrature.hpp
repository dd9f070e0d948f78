#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fracsem {

enum class QuadratureRule { trapezoid, gauss_legendre_panels };

/// Quadrature in the log variable tau = log t over [tau_min, tau_max].
struct QuadratureSpec {
    double tau_min = -30.0;
    double tau_max = 30.0;
    int nodes_per_decade = 16;
    QuadratureRule rule = QuadratureRule::gauss_legendre_panels;

    void validate() const;
};

/// Leading power-law behavior of the integrand f(t) ~ C t^p at either end of
/// (0, infinity). When present, the truncated tail beyond the tau window is
/// added in closed form from the endpoint value.
struct MellinTails {
    std::optional<double> small_t_power;
    std::optional<double> large_t_power;
    /// |f(t)| at or below this is round-off: the endpoint checks ignore it.
    double noise_floor = 0.0;
};

struct MellinResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< |I(2N) - I(N)| plus the tail-model mismatch
    double tail_contribution = 0.0;
};

struct MellinVectorResult {
    std::vector<double> value;
    double error_estimate = 0.0;  ///< max-norm over components
};

/// Integrand producing `out.size()` values at time t; accumulation is linear.
using VectorIntegrand = std::function<void(double t, std::span<double> out)>;

/// int_0^inf f(t) dt / t^{1 + sigma} via tau = log t. Returns the 2N-node value
/// with |I(2N) - I(N)| attached.
MellinResult integrate_mellin(const std::function<double(double)>& f, double sigma,
                              const QuadratureSpec& spec, const MellinTails& tails = {});

MellinVectorResult integrate_mellin(const VectorIntegrand& f, std::size_t dim, double sigma,
                                    const QuadratureSpec& spec, const MellinTails& tails = {});

/// Gauss-Legendre nodes and weights on [-1, 1] (cached, thread-safe).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

/// Composite Gauss-Legendre over [a, b] split at `breaks` (sorted, inside
/// (a, b)) and into panels no wider than `max_panel`.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        double max_panel, int order = 16, std::span<const double> breaks = {});

/// Composite Gauss-Legendre over the part of [a, b] at relative distance >= depth
/// from `a`, with panels graded geometrically (ratio 0.15) toward `a`. The
/// piece [a, a + depth (b - a)] is left to the caller, who knows the endpoint
/// singularity. Returns the oriented integral, so `b < a` is allowed.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        int order = 16, double depth = 1e-14);

}  // namespace fracsem

#pragma once

#include "fracsem/field.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fracsem {

/// per_decade log-spaced times from t_min to t_max inclusive.
std::vector<double> regularity_t_grid(int per_decade = 25, double t_min = 1e-6, double t_max = 1e2);

/// Smallest admissible k for Lambda^alpha: floor(alpha/2) + 1.
int lambda_order(double alpha);

/// max over (t, x) of |t^{k - alpha/2} d^k/dt^k e^{t Delta}u(x)|, heat evaluated
/// spectrally. Empty x_probe means every grid point.
double lambda_seminorm(const GridField& u, double alpha, int k, std::span<const double> t_grid,
                       std::span<const std::size_t> x_probe = {});

struct RegularityReport {
    double alpha_est = 0.0;
    /// lambda_seminorm at alpha_est with k_used.
    double seminorm_semigroup = 0.0;
    /// zygmund_seminorm(u, 1).
    double seminorm_zygmund = 0.0;
    int k_used = 1;
    std::vector<double> t_grid;
    /// Empty: the full grid was probed.
    std::vector<std::size_t> x_probe;
    double fit_t_min = 0.0;
    double fit_t_max = 0.0;
    std::size_t fit_points = 0;
    /// RMS deviation of log sup_x |d^k/dt^k e^{t Delta}u| from the fitted line.
    double fit_residual = 0.0;
    /// alpha_est >= 2k - 0.1: u looks smoother than the window can tell.
    bool saturated = false;
};

inline constexpr double kMaxFitResidual = 0.05;

/// Least-squares slope of log sup_x |d^k/dt^k e^{t Delta}u| against log t over
/// the two decades of t above h^2 (h the grid spacing); alpha_est = 2(k + slope).
/// Throws fit_residual when the RMS log deviation exceeds kMaxFitResidual.
RegularityReport estimate_alpha(const GridField& u, int k = 1, std::span<const double> t_grid = {});

/// max over grid x, axes and dyadic h = 2^j spacing <= L/4 of
/// |v(x + h) + v(x - h) - 2 v(x)| / h, with v the (order - 1)-th spectral
/// derivative of u along the same axis.
double zygmund_seminorm(const GridField& u, int order = 1);

/// max over grid x, axes and dyadic h <= L/4 of |u(x + h) - u(x)| / h^alpha.
double holder_seminorm(const GridField& u, double alpha);

enum class MappingMode {
    holder_forward,    ///< (-Delta)^s : Lambda^alpha -> Lambda^{alpha - 2s}
    schauder_inverse,  ///< (-Delta)^{-s} : Lambda^alpha -> Lambda^{alpha + 2s}
    schauder_bounded,  ///< (-Delta)^{-s} : L^inf -> Lambda^{2s}
};

struct MappingRow {
    std::string fixture;
    double alpha_in = 0.0;
    double alpha_out = 0.0;
    /// Lambda^{alpha_in} seminorm, or sup|f| for schauder_bounded.
    double input_seminorm = 0.0;
    double output_seminorm = 0.0;
    double ratio = 0.0;
    /// Zygmund seminorm of the output when alpha_out is an integer (Lambda_*), else 0.
    double output_zygmund = 0.0;
};

struct MappingTable {
    MappingMode mode = MappingMode::holder_forward;
    double s = 0.0;
    double alpha = 0.0;
    std::vector<MappingRow> rows;
    double sup_ratio = 0.0;
};

/// Ratio table for the mapping bounds over a fixture set. Operators are applied
/// spectrally; the inverse removes the mean first. Each row is labelled with the
/// field's source(). alpha is ignored for schauder_bounded.
MappingTable verify_mapping(std::span<const GridField> fields, double s, double alpha, MappingMode mode,
                            std::span<const double> t_grid = {});

std::string to_string(MappingMode mode);

}  // namespace fracsem

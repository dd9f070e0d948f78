#pragma once

#include "fracsem/field.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/numerics.hpp"
#include "fracsem/quadrature.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fracsem {

/// The four closed forms for the extension U(x, y).
enum class ExtensionRoute {
    semigroup_dirichlet,  ///< y^{2s}/(4^s Gamma(s)) int e^{-y^2/4t} e^{t Delta}u dt/t^{1+s}
    subordination,        ///< 1/Gamma(s) int e^{-r} e^{(y^2/4r) Delta}u dr/r^{1-s}
    semigroup_frac,       ///< 1/Gamma(s) int e^{-y^2/4t} e^{t Delta}(-Delta)^s u dt/t^{1-s}
    poisson_kernel,       ///< convolution with the Poisson kernel P_y^s
};

/// Which boundary problem U solves: U(., 0) = u, or -y^a U_y(., 0) = f.
enum class ExtensionKind : std::uint32_t { dirichlet = 0, neumann = 1 };

/// U on (x-grid) x (y-nodes), slice-major: value(j, i) is U(x_i, y_j).
class ExtensionField {
public:
    ExtensionField(GridField boundary, std::vector<double> y_nodes, std::vector<double> values, FracOrder s,
                   ExtensionKind kind = ExtensionKind::dirichlet);

    /// The datum the extension was built from: u for Dirichlet, f for Neumann.
    [[nodiscard]] const GridField& boundary() const noexcept { return boundary_; }
    [[nodiscard]] ExtensionKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::span<const double> y_nodes() const noexcept { return y_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] FracOrder s() const noexcept { return s_; }
    [[nodiscard]] std::size_t y_count() const noexcept { return y_.size(); }
    [[nodiscard]] double value(std::size_t j, std::size_t i) const noexcept {
        return values_[j * boundary_.size() + i];
    }
    [[nodiscard]] GridField slice(std::size_t j) const;
    /// sup_x |U(x, y_min) - u(x)|.
    [[nodiscard]] double boundary_gap() const;

    /// Same grid and y-nodes, new values.
    [[nodiscard]] ExtensionField with_values(std::vector<double> values) const;

private:
    GridField boundary_;
    std::vector<double> y_;
    std::vector<double> values_;
    FracOrder s_;
    ExtensionKind kind_;
};

/// count log-spaced nodes from y_min to y_max inclusive.
std::vector<double> log_y_nodes(int count = 48, double y_min = 1e-3, double y_max = 20.0);

/// U on the torus, each route evaluated mode by mode from its own formula.
/// semigroup_frac carries the zero mode (the mean) separately, since
/// |xi|^{2s} annihilates it; poisson_kernel uses the kernel's Fourier
/// transform (2^{1-s}/Gamma(s)) (y|xi|)^s K_s(y|xi|).
ExtensionField extend(const GridField& u, FracOrder s, std::span<const double> y_nodes,
                      ExtensionRoute route = ExtensionRoute::semigroup_dirichlet, const QuadratureSpec& spec = {});

/// U(x, y) on R^n by heat-kernel quadrature (first two routes) or direct
/// Poisson-kernel convolution. semigroup_frac is unsupported here.
PointValue extend_at(const AnalyticField& u, std::span<const double> x, double y, FracOrder s,
                     ExtensionRoute route = ExtensionRoute::semigroup_dirichlet, const QuadratureSpec& spec = {});

/// y^{2s}/(4^s Gamma(s)) int e^{-y^2/4t} dt/t^{1+s}, which is 1.
double kernel_normalization(double y, FracOrder s, const QuadratureSpec& spec = {});

struct BoundaryLimit {
    GridField measured;
    /// constant * (-Delta)^s u with the exact constant.
    GridField target;
    /// Median of measured / (-Delta)^s u over points where the latter is significant.
    double constant_ratio = 0.0;
    /// Largest change between the two- and three-term extrapolations.
    double residual = 0.0;
};

/// -y^a U_y extrapolated to y = 0 from the three smallest y-nodes. U_y comes
/// from differentiating the extension formula under the integral sign; the fit
/// is c0 + c1 y^{2-2s} + c2 y^2. For a Dirichlet extension the target is
/// cs_neumann (-Delta)^s u; for a Neumann extension it is f itself, with the
/// ratio taken against f. Throws extrapolation_divergence when the two- and
/// three-term fits differ by more than 10% of max |measured|.
BoundaryLimit neumann_limit(const ExtensionField& ext, const QuadratureSpec& spec = {});

/// -(U(., y) - u)/y^{2s} extrapolated to y = 0 from the stored slices, same fit.
/// Dirichlet extensions only.
BoundaryLimit quotient_limit(const ExtensionField& ext);

/// Solution of the Neumann problem -y^a U_y(., 0) = f on the torus, f projected
/// to zero mean: (4^{s-1/2} Gamma(s)/Gamma(1-s)) (1/Gamma(s)) int e^{-y^2/4t} e^{t Delta}f dt/t^{1-s}.
/// U(., 0) is then (4^{s-1/2} Gamma(s)/Gamma(1-s)) (-Delta)^{-s} f.
ExtensionField extend_neumann(const GridField& f, FracOrder s, std::span<const double> y_nodes,
                              const QuadratureSpec& spec = {});

struct BesselIdentity {
    double lhs = 0.0;  ///< (1/2)(z/2)^s int e^{-t} e^{-z^2/4t} dt/t^{1+s}
    double rhs = 0.0;  ///< K_s(z)
    double error_estimate = 0.0;
};

BesselIdentity bessel_k_identity(double s, double z, const QuadratureSpec& spec = {});

/// PDE residual of Delta_x U + (a/y) U_y + U_yy = 0 over y-nodes with two
/// neighbours on each side, spectral in x and five-point differences in log y.
/// Written in tau = log y the equation is y^2 Delta_x U + U_tautau - 2s U_tau = 0;
/// the residual is the max over x of that sum divided by the max over x of the
/// sum of the three magnitudes.
double pde_residual(const ExtensionField& ext);

/// [u]_{H^s}^2 of the periodic field two ways. The Gagliardo form integrates
/// x over one cell and h over R^n, with S(h) = int |u(x + h) - u(x)|^2 dx taken
/// exactly from the trigonometric interpolant. Radial quadrature runs to |h| = L;
/// beyond it S is replaced by its cell average.
struct HsSeminorm {
    double spectral = 0.0;    ///< sum |xi|^{2s} |u_hat|^2
    double gagliardo = 0.0;   ///< (c_{n,s}/2) double integral via the structure function
    double tail_bound = 0.0;  ///< bound on the neglected oscillation of S beyond |h| = L
};

HsSeminorm hs_seminorm(const GridField& u, FracOrder s);

struct ExtensionEnergy {
    double value = 0.0;
    /// Relative change when every other y-node is dropped.
    double refinement_change = 0.0;
    bool y_grid_too_coarse = false;
};

/// int int y^a |grad_{x,y} U|^2 dx dy: spectral in x, fourth-order differences
/// and trapezoid in log y, power-law closed forms below y_min and above y_max.
ExtensionEnergy extension_energy(const ExtensionField& ext);

/// Binary layout: the common header with y_count set, the kind (u32) and a
/// reserved u32, the y-nodes, the boundary values, then the slices.
void save_extension(const ExtensionField& ext, const std::filesystem::path& path);
ExtensionField load_extension(const std::filesystem::path& path);

}  // namespace fracsem

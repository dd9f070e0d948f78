#pragma once

#include "fracsem/numerics.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fracsem {

using Point = std::array<double, 3>;
using PointFn = std::function<double(std::span<const double>)>;

/// Decay class of a function at infinity, as used by the admissibility and
/// tail-bound checks.
struct Decay {
    enum class Kind { schwartz, bounded, tail_power };

    Kind kind = Kind::schwartz;
    /// tail_power(p): |u(x)| <= C |x|^{-p} for large |x|. Negative p means growth.
    double power = 0.0;

    static Decay schwartz() { return {Kind::schwartz, 0.0}; }
    static Decay bounded() { return {Kind::bounded, 0.0}; }
    static Decay tail_power(double p) { return {Kind::tail_power, p}; }

    /// +inf for schwartz, 0 for bounded, p otherwise.
    [[nodiscard]] double effective_power() const noexcept;
};

/// Closed-form scalar function on R^n used as an oracle fixture.
struct AnalyticField {
    std::string name;
    int n = 1;
    PointFn eval;
    Decay decay;

    /// Known Fourier transform (convention: int u(x) e^{-i x.xi} dx), real-valued.
    std::optional<PointFn> fourier;
    /// Known (-Delta)^s u(x) on R^n.
    std::optional<std::function<double(double, std::span<const double>)>> exact_frac_image;
    std::optional<std::function<void(std::span<const double>, std::span<double>)>> gradient;
    std::optional<PointFn> laplacian;
    /// u(x) = radial_profile(|x|) when present.
    std::optional<std::function<double(double)>> radial_profile;

    /// u vanishes (below 1e-17 sup|u|) outside the cube |x|_inf <= support_radius.
    double support_radius = std::numeric_limits<double>::infinity();
    /// Shortest length over which u varies appreciably; sets quadrature panel widths.
    double feature_scale = 1.0;
    double sup_norm = std::numeric_limits<double>::quiet_NaN();
    /// sup |D^2 u| (operator norm); NaN when unknown.
    double hessian_bound = std::numeric_limits<double>::quiet_NaN();
    /// Average of u over large spheres (cell mean for periodic fields, 0 for decaying ones).
    double mean_at_infinity = 0.0;
    /// Common period along every axis, for periodic fields.
    std::optional<double> period;

    double operator()(std::span<const double> x) const { return eval(x); }
    double at(const Point& x) const { return eval(std::span<const double>(x.data(), n)); }
};

/// Scalar samples on the periodic box [-L, L)^n with M points per axis, sample
/// j along an axis at -L + j * (2L / M). Values are stored row-major with the
/// last axis fastest, and are immutable after construction.
class GridField {
public:
    GridField(int n, double half_width, int points_per_axis, std::vector<double> values,
              std::string source = {});

    static GridField constant(int n, double half_width, int points_per_axis, double value);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double half_width() const noexcept { return half_width_; }
    [[nodiscard]] int points_per_axis() const noexcept { return m_; }
    [[nodiscard]] double spacing() const noexcept { return 2.0 * half_width_ / m_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] const std::string& source() const noexcept { return source_; }

    [[nodiscard]] double coordinate(int j) const noexcept { return -half_width_ + j * spacing(); }
    /// Coordinates of flat index i (unused trailing entries are zero).
    [[nodiscard]] Point point(std::size_t i) const noexcept;
    /// Flat index of the multi-index (j0, j1, j2), each taken modulo M.
    [[nodiscard]] std::size_t index(std::span<const long> multi) const noexcept;
    /// Flat index of the grid point nearest to x (periodic).
    [[nodiscard]] std::size_t nearest_index(std::span<const double> x) const noexcept;

    /// Same geometry, new values (validated).
    [[nodiscard]] GridField with_values(std::vector<double> values, std::string source = {}) const;
    [[nodiscard]] bool same_geometry(const GridField& other) const noexcept;

    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] double max_abs() const noexcept;
    /// Box integral (2L/M)^n * sum |u|^2.
    [[nodiscard]] double l2_norm_squared() const noexcept;

private:
    int n_;
    double half_width_;
    int m_;
    std::vector<double> values_;
    std::string source_;
};

bool is_power_of_two(long m) noexcept;

/// Pointwise sampling on the uniform grid; rejects non-finite evaluations.
GridField sample(const AnalyticField& f, double half_width, int points_per_axis);

/// int_{|x| >= inner_radius} |u(x)| / (1 + |x|^{n+2s}) dx. Returns +inf when the
/// tail is not integrable. Radial quadrature with an angular rule for n >= 2.
double ls_norm(const AnalyticField& f, double s, double inner_radius = 0.0);

/// Riemann sum over the box plus an analytic bound for the exterior, driven by
/// the largest value on the outermost grid layer.
double ls_norm(const GridField& g, double s);

}  // namespace fracsem

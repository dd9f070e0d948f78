#pragma once

#include "fracsem/field.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fracsem {

/// Half-complex discrete Fourier coefficients of a real GridField, with the
/// periodic wavenumbers xi_m = pi m / L, m in [-M/2, M/2). Coefficients are
/// unnormalized (forward sum); to_field() divides by M^n.
class Spectrum {
public:
    explicit Spectrum(const GridField& g);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int points_per_axis() const noexcept { return m_; }
    [[nodiscard]] double half_width() const noexcept { return half_width_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    [[nodiscard]] std::span<std::complex<double>> coefficients() noexcept { return coeffs_; }
    [[nodiscard]] std::span<const std::complex<double>> coefficients() const noexcept { return coeffs_; }

    /// Signed mode number of coefficient i along an axis, in [-M/2, M/2].
    [[nodiscard]] int mode(std::size_t i, int axis) const noexcept;
    [[nodiscard]] double wavenumber(std::size_t i, int axis) const noexcept;
    [[nodiscard]] double xi2(std::size_t i) const noexcept { return xi2_[i]; }
    /// True when coefficient i sits on the Nyquist plane of the given axis.
    [[nodiscard]] bool nyquist(std::size_t i, int axis) const noexcept;
    /// Multiplicity of coefficient i in the full (two-sided) spectrum: 1 or 2.
    [[nodiscard]] int multiplicity(std::size_t i) const noexcept;

    /// Distinct |xi|^2 values, and for each coefficient the index into that list.
    [[nodiscard]] const std::vector<double>& distinct_xi2() const noexcept { return distinct_; }
    [[nodiscard]] std::uint32_t distinct_index(std::size_t i) const noexcept { return distinct_index_[i]; }

    /// Multiply every coefficient by m(|xi|^2).
    void apply_radial(const std::function<double(double)>& m);
    /// Multiply coefficient i by per_distinct[distinct_index(i)].
    void apply_distinct(std::span<const double> per_distinct);

    [[nodiscard]] GridField to_field(std::string source = {}) const;

    /// Mean of the sampled field (zero mode / M^n).
    [[nodiscard]] double mean() const noexcept;

private:
    int n_;
    int m_;
    double half_width_;
    std::vector<std::complex<double>> coeffs_;
    std::vector<double> xi2_;
    std::vector<double> distinct_;
    std::vector<std::uint32_t> distinct_index_;
};

/// Field with Fourier coefficients multiplied by m(|xi|^2).
GridField apply_radial_multiplier(const GridField& u, const std::function<double(double)>& m,
                                  std::string source = {});

/// Spectral partial derivative of the given order along one axis. Odd orders
/// drop the Nyquist mode of that axis.
GridField spectral_derivative(const GridField& u, int axis, int order = 1);

/// Periodic translation by whole grid cells along each axis.
GridField shift_cells(const GridField& u, std::span<const long> cells);

}  // namespace fracsem

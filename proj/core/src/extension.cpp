#include "fracsem/extension.hpp"

#include "fracsem/error.hpp"
#include "fracsem/field_io.hpp"
#include "fracsem/heat.hpp"
#include "fracsem/parallel.hpp"
#include "fracsem/spectral.hpp"
#include "log_grid.hpp"
#include "sphere_rule.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace fracsem {

namespace {

void validate_y_nodes(std::span<const double> y) {
    if (y.empty()) {
        throw Error(ErrorCode::validation, "extension needs at least one y-node");
    }
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (!(y[j] > 0.0) || !std::isfinite(y[j]) || (j > 0 && !(y[j] > y[j - 1]))) {
            throw Error(ErrorCode::validation, "y-nodes must be positive, finite and strictly increasing");
        }
    }
}

// Lower end of the tau window so that e^{-y^2/4t} has decayed below e^{-40}.
QuadratureSpec window_for(const QuadratureSpec& spec, double y_min) {
    QuadratureSpec w = spec;
    w.tau_min = std::min(spec.tau_min, std::log(y_min * y_min / 160.0));
    return w;
}

// One multiplier per distinct |xi|^2 at height y.
using ModeMultiplier = std::vector<double>;

ModeMultiplier dirichlet_multiplier(const std::vector<double>& xi2, double y, FracOrder s, ExtensionRoute route,
                                    const QuadratureSpec& spec) {
    const double ss = s.s();
    const std::size_t nd = xi2.size();
    const QuadratureSpec w = window_for(spec, y);
    ModeMultiplier m(nd);
    switch (route) {
    case ExtensionRoute::semigroup_dirichlet: {
        const auto f = [&](double t, std::span<double> out) {
            for (std::size_t d = 0; d < nd; ++d) {
                out[d] = std::exp(-y * y / (4.0 * t) - t * xi2[d]);
            }
        };
        MellinTails tails;
        tails.large_t_power = 0.0;
        const MellinVectorResult r = integrate_mellin(f, nd, ss, w, tails);
        const double pre = std::pow(y, 2.0 * ss) / (std::pow(4.0, ss) * gamma(ss));
        for (std::size_t d = 0; d < nd; ++d) {
            m[d] = pre * r.value[d];
        }
        break;
    }
    case ExtensionRoute::subordination: {
        const auto f = [&](double r, std::span<double> out) {
            for (std::size_t d = 0; d < nd; ++d) {
                out[d] = std::exp(-r - y * y * xi2[d] / (4.0 * r));
            }
        };
        MellinTails tails;
        tails.small_t_power = 0.0;
        const MellinVectorResult r = integrate_mellin(f, nd, -ss, spec, tails);
        for (std::size_t d = 0; d < nd; ++d) {
            m[d] = r.value[d] / gamma(ss);
        }
        break;
    }
    case ExtensionRoute::semigroup_frac: {
        // applied to (-Delta)^s u, whose zero mode vanishes
        const auto f = [&](double t, std::span<double> out) {
            for (std::size_t d = 0; d < nd; ++d) {
                out[d] = xi2[d] == 0.0 ? 0.0 : std::exp(-y * y / (4.0 * t) - t * xi2[d]);
            }
        };
        const MellinVectorResult r = integrate_mellin(f, nd, -ss, w);
        for (std::size_t d = 0; d < nd; ++d) {
            m[d] = r.value[d] / gamma(ss);
        }
        break;
    }
    case ExtensionRoute::poisson_kernel: {
        const double pre = std::pow(2.0, 1.0 - ss) / gamma(ss);
        for (std::size_t d = 0; d < nd; ++d) {
            const double z = y * std::sqrt(xi2[d]);
            m[d] = z == 0.0 ? 1.0 : (z > 700.0 ? 0.0 : pre * std::pow(z, ss) * std::cyl_bessel_k(ss, z));
        }
        break;
    }
    }
    return m;
}

// -y^a d/dy of the first formula, integrated by parts so nothing cancels:
// (1/(4^s Gamma(s))) int e^{-y^2/4t} (1 - e^{-t xi^2}) (2s - y^2/2t) dt/t^{1+s}.
ModeMultiplier dirichlet_flux(const std::vector<double>& xi2, double y, FracOrder s, const QuadratureSpec& spec) {
    const double ss = s.s();
    const std::size_t nd = xi2.size();
    const auto f = [&](double t, std::span<double> out) {
        const double q = y * y / (4.0 * t);
        for (std::size_t d = 0; d < nd; ++d) {
            out[d] = -std::expm1(-t * xi2[d]) * std::exp(-q) * (2.0 * ss - 2.0 * q);
        }
    };
    MellinTails tails;
    tails.large_t_power = 0.0;
    const MellinVectorResult r = integrate_mellin(f, nd, ss, window_for(spec, y), tails);
    ModeMultiplier m(nd);
    const double pre = 1.0 / (std::pow(4.0, ss) * gamma(ss));
    for (std::size_t d = 0; d < nd; ++d) {
        m[d] = pre * r.value[d];
    }
    return m;
}

// Neumann extension multiplier (scaled by 1/cs_neumann) and its flux
// -y^a d/dy, (y^{2-2s}/(2 Gamma(s))) int e^{-y^2/4t} e^{-t xi^2} dt/t^{2-s}.
ModeMultiplier neumann_multiplier(const std::vector<double>& xi2, double y, FracOrder s, const QuadratureSpec& spec,
                                  bool flux) {
    const double ss = s.s();
    const std::size_t nd = xi2.size();
    const auto f = [&](double t, std::span<double> out) {
        for (std::size_t d = 0; d < nd; ++d) {
            out[d] = xi2[d] == 0.0 ? 0.0 : std::exp(-y * y / (4.0 * t) - t * xi2[d]);
        }
    };
    const double sigma = flux ? 1.0 - ss : -ss;
    const MellinVectorResult r = integrate_mellin(f, nd, sigma, window_for(spec, y));
    const double scale = 1.0 / (cs_neumann(s) * gamma(ss));
    const double pre = flux ? scale * 0.5 * std::pow(y, 2.0 - 2.0 * ss) : scale;
    ModeMultiplier m(nd);
    for (std::size_t d = 0; d < nd; ++d) {
        m[d] = pre * r.value[d];
    }
    return m;
}

GridField apply_modes(const Spectrum& base, std::span<const double> m) {
    Spectrum sp = base;
    sp.apply_distinct(m);
    return sp.to_field();
}

// Weights w with c0 = sum w_k v_k for the least-squares-free interpolation
// v(y) = c0 + c1 y^p + c2 y^2 through the given nodes (two or three of them).
std::vector<double> extrapolation_weights(std::span<const double> y, double p) {
    if (y.size() == 2) {
        const double a = std::pow(y[0], p);
        const double b = std::pow(y[1], p);
        return {b / (b - a), -a / (b - a)};
    }
    // Solve V^T w = e0 with V rows (1, y^p, y^2), by Cramer's rule.
    std::array<std::array<double, 3>, 3> m{};
    for (int k = 0; k < 3; ++k) {
        m[0][k] = 1.0;
        m[1][k] = std::pow(y[k], p);
        m[2][k] = y[k] * y[k];
    }
    const auto det = [](const std::array<std::array<double, 3>, 3>& a) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double d = det(m);
    std::vector<double> w(3);
    for (int k = 0; k < 3; ++k) {
        auto mk = m;
        for (int r = 0; r < 3; ++r) {
            mk[r][k] = r == 0 ? 1.0 : 0.0;
        }
        w[k] = det(mk) / d;
    }
    return w;
}

double median(std::vector<double> v) {
    if (v.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    if (v.size() % 2 == 1) {
        return v[mid];
    }
    const double hi = v[mid];
    return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + mid));
}

// Fits the three smallest-node slices to y = 0 and fills the limit record.
BoundaryLimit extrapolate(const std::array<GridField, 3>& slices, std::span<const double> y, FracOrder s,
                          const GridField& reference, double constant, double data_scale) {
    const double p = 2.0 - 2.0 * s.s();
    const std::vector<double> w3 = extrapolation_weights(y.first(3), p);
    const std::vector<double> w2 = extrapolation_weights(y.first(2), p);
    const std::size_t size = reference.size();
    std::vector<double> measured(size);
    double residual = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        const double v3 = w3[0] * slices[0][i] + w3[1] * slices[1][i] + w3[2] * slices[2][i];
        const double v2 = w2[0] * slices[0][i] + w2[1] * slices[1][i];
        measured[i] = v3;
        residual = std::max(residual, std::abs(v3 - v2));
        peak = std::max(peak, std::abs(v3));
    }
    // the floor keeps round-off from tripping the check when the limit is zero
    if (residual > 0.1 * peak + 1e-8 * data_scale) {
        throw Error(ErrorCode::extrapolation_divergence,
                    "boundary extrapolation residual " + format_double(residual) + " exceeds 10% of the limit");
    }
    std::vector<double> target(size);
    std::vector<double> ratios;
    const double ref_peak = reference.max_abs();
    for (std::size_t i = 0; i < size; ++i) {
        target[i] = constant * reference[i];
        if (std::abs(reference[i]) > 1e-2 * ref_peak) {
            ratios.push_back(measured[i] / reference[i]);
        }
    }
    BoundaryLimit out{reference.with_values(std::move(measured)), reference.with_values(std::move(target)), 0.0,
                      residual};
    out.constant_ratio = median(std::move(ratios));
    return out;
}

void require_three_nodes(const ExtensionField& ext) {
    if (ext.y_count() < 3) {
        throw Error(ErrorCode::validation, "boundary limits need at least three y-nodes");
    }
}

}  // namespace

ExtensionField::ExtensionField(GridField boundary, std::vector<double> y_nodes, std::vector<double> values,
                               FracOrder s, ExtensionKind kind)
    : boundary_(std::move(boundary)), y_(std::move(y_nodes)), values_(std::move(values)), s_(s), kind_(kind) {
    validate_y_nodes(y_);
    if (values_.size() != y_.size() * boundary_.size()) {
        throw Error(ErrorCode::validation, "extension values must hold one slice per y-node");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::validation, "extension values must be finite");
        }
    }
}

GridField ExtensionField::slice(std::size_t j) const {
    const std::size_t size = boundary_.size();
    std::vector<double> v(values_.begin() + j * size, values_.begin() + (j + 1) * size);
    return boundary_.with_values(std::move(v), "y=" + format_double(y_[j]));
}

double ExtensionField::boundary_gap() const {
    double gap = 0.0;
    for (std::size_t i = 0; i < boundary_.size(); ++i) {
        gap = std::max(gap, std::abs(value(0, i) - boundary_[i]));
    }
    return gap;
}

ExtensionField ExtensionField::with_values(std::vector<double> values) const {
    return ExtensionField(boundary_, y_, std::move(values), s_, kind_);
}

std::vector<double> log_y_nodes(int count, double y_min, double y_max) {
    if (count < 2 || !(y_min > 0.0) || !(y_max > y_min)) {
        throw Error(ErrorCode::validation, "log_y_nodes needs count >= 2 and 0 < y_min < y_max");
    }
    std::vector<double> y(count);
    const double a = std::log(y_min);
    const double b = std::log(y_max);
    for (int j = 0; j < count; ++j) {
        y[j] = std::exp(a + (b - a) * j / (count - 1));
    }
    y.front() = y_min;
    y.back() = y_max;
    return y;
}

ExtensionField extend(const GridField& u, FracOrder s, std::span<const double> y_nodes, ExtensionRoute route,
                      const QuadratureSpec& spec) {
    s.require_operator_range();
    spec.validate();
    validate_y_nodes(y_nodes);
    const Spectrum base = route == ExtensionRoute::semigroup_frac ? Spectrum(frac_apply_spectral(u, s)) : Spectrum(u);
    const std::vector<double>& xi2 = base.distinct_xi2();
    const double mean = u.mean();
    const std::size_t size = u.size();
    std::vector<double> values(y_nodes.size() * size);
    parallel_for(y_nodes.size(), [&](std::size_t j) {
        const ModeMultiplier m = dirichlet_multiplier(xi2, y_nodes[j], s, route, spec);
        const GridField slice = apply_modes(base, m);
        const double shift = route == ExtensionRoute::semigroup_frac ? mean : 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            values[j * size + i] = slice[i] + shift;
        }
    });
    return ExtensionField(u, std::vector<double>(y_nodes.begin(), y_nodes.end()), std::move(values), s);
}

PointValue extend_at(const AnalyticField& u, std::span<const double> x, double y, FracOrder s, ExtensionRoute route,
                     const QuadratureSpec& spec) {
    s.require_operator_range();
    spec.validate();
    if (!(y > 0.0)) {
        throw Error(ErrorCode::domain, "extension height must be positive");
    }
    if (static_cast<int>(x.size()) != u.n) {
        throw Error(ErrorCode::validation, "point dimension does not match the field");
    }
    const double ss = s.s();
    const double p = u.decay.effective_power();
    const bool decaying = !u.period && u.mean_at_infinity == 0.0 && p > 0.0;
    const double heat_power = decaying ? -0.5 * std::min(static_cast<double>(u.n), p) : 0.0;
    const double floor = std::isfinite(u.sup_norm) ? 1e-14 * u.sup_norm : 0.0;
    const double ux = u(x);
    const double t_floor = 1e-10 * u.feature_scale * u.feature_scale;
    const auto heat = [&](double t) { return t < t_floor ? ux : heat_apply_analytic(u, x, t); };

    switch (route) {
    case ExtensionRoute::semigroup_dirichlet: {
        QuadratureSpec w = spec;
        w.tau_min = std::max(spec.tau_min, std::log(y * y / 2800.0));
        MellinTails tails;
        tails.large_t_power = heat_power;
        tails.noise_floor = floor;
        const auto f = [&](double t) { return std::exp(-y * y / (4.0 * t)) * heat(t); };
        const MellinResult r = integrate_mellin(f, ss, w, tails);
        const double pre = std::pow(y, 2.0 * ss) / (std::pow(4.0, ss) * gamma(ss));
        return {pre * r.value, pre * r.error_estimate};
    }
    case ExtensionRoute::subordination: {
        QuadratureSpec w = spec;
        w.tau_max = std::min(spec.tau_max, std::log(800.0));
        MellinTails tails;
        tails.small_t_power = -heat_power;
        tails.noise_floor = floor;
        const auto f = [&](double r) { return std::exp(-r) * heat(y * y / (4.0 * r)); };
        const MellinResult r = integrate_mellin(f, -ss, w, tails);
        return {r.value / gamma(ss), r.error_estimate / gamma(ss)};
    }
    case ExtensionRoute::poisson_kernel: {
        if (!std::isfinite(u.support_radius)) {
            throw Error(ErrorCode::unsupported, "Poisson-kernel convolution needs a compactly supported field");
        }
        const int n = u.n;
        double xnorm = 0.0;
        for (double v : x) {
            xnorm += v * v;
        }
        const double R = u.support_radius * std::sqrt(double(n)) + std::sqrt(xnorm);
        const double c = std::tgamma(0.5 * n + ss) / (gamma(ss) * std::pow(kPi, 0.5 * n));
        const detail::SphereRule rule = detail::sphere_rule(n, n == 2 ? 128 : 64);
        const auto shell = [&](double r) {
            double acc = 0.0;
            Point z{0.0, 0.0, 0.0};
            for (std::size_t d = 0; d < rule.dirs.size(); ++d) {
                for (int a = 0; a < n; ++a) {
                    z[a] = x[a] + r * rule.dirs[d][a];
                }
                acc += rule.weights[d] * u.at(z);
            }
            return acc;
        };
        const auto f = [&](double r) {
            return c * std::pow(y, 2.0 * ss) * std::pow(r, n - 1) * shell(r) /
                   std::pow(y * y + r * r, 0.5 * n + ss);
        };
        std::vector<double> breaks;
        for (double b = y / 16.0; b < R; b *= 2.0) {
            breaks.push_back(b);
        }
        const double coarse = integrate_panels(f, 0.0, R, 0.5 * u.feature_scale, 8, breaks);
        const double fine = integrate_panels(f, 0.0, R, 0.25 * u.feature_scale, 16, breaks);
        return {fine, std::abs(fine - coarse)};
    }
    case ExtensionRoute::semigroup_frac:
        break;
    }
    throw Error(ErrorCode::unsupported, "the (-Delta)^s u route is grid-only");
}

double kernel_normalization(double y, FracOrder s, const QuadratureSpec& spec) {
    s.require_operator_range();
    if (!(y > 0.0)) {
        throw Error(ErrorCode::domain, "kernel normalization needs y > 0");
    }
    MellinTails tails;
    tails.large_t_power = 0.0;
    const MellinResult r =
        integrate_mellin([&](double t) { return std::exp(-y * y / (4.0 * t)); }, s.s(), window_for(spec, y), tails);
    return std::pow(y, 2.0 * s.s()) / (std::pow(4.0, s.s()) * gamma(s.s())) * r.value;
}

BoundaryLimit neumann_limit(const ExtensionField& ext, const QuadratureSpec& spec) {
    require_three_nodes(ext);
    const FracOrder s = ext.s();
    const Spectrum base(ext.boundary());
    const std::vector<double>& xi2 = base.distinct_xi2();
    std::array<GridField, 3> slices{ext.boundary(), ext.boundary(), ext.boundary()};
    for (std::size_t j = 0; j < 3; ++j) {
        const double y = ext.y_nodes()[j];
        const ModeMultiplier m = ext.kind() == ExtensionKind::dirichlet ? dirichlet_flux(xi2, y, s, spec)
                                                                        : neumann_multiplier(xi2, y, s, spec, true);
        slices[j] = apply_modes(base, m);
    }
    if (ext.kind() == ExtensionKind::dirichlet) {
        return extrapolate(slices, ext.y_nodes(), s, frac_apply_spectral(ext.boundary(), s), cs_neumann(s),
                           ext.boundary().max_abs());
    }
    return extrapolate(slices, ext.y_nodes(), s, ext.boundary(), 1.0, ext.boundary().max_abs());
}

BoundaryLimit quotient_limit(const ExtensionField& ext) {
    require_three_nodes(ext);
    if (ext.kind() != ExtensionKind::dirichlet) {
        throw Error(ErrorCode::unsupported, "the boundary quotient is defined for Dirichlet extensions");
    }
    const FracOrder s = ext.s();
    const GridField& u = ext.boundary();
    std::array<GridField, 3> slices{u, u, u};
    for (std::size_t j = 0; j < 3; ++j) {
        const double scale = std::pow(ext.y_nodes()[j], 2.0 * s.s());
        std::vector<double> q(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            q[i] = -(ext.value(j, i) - u[i]) / scale;
        }
        slices[j] = u.with_values(std::move(q));
    }
    return extrapolate(slices, ext.y_nodes(), s, frac_apply_spectral(u, s), cs_quotient(s), u.max_abs());
}

ExtensionField extend_neumann(const GridField& f, FracOrder s, std::span<const double> y_nodes,
                              const QuadratureSpec& spec) {
    s.require_operator_range();
    spec.validate();
    validate_y_nodes(y_nodes);
    const double mean = f.mean();
    std::vector<double> projected(f.values().begin(), f.values().end());
    for (double& v : projected) {
        v -= mean;
    }
    const GridField datum = f.with_values(std::move(projected), f.source());
    const Spectrum base(datum);
    const std::size_t size = f.size();
    std::vector<double> values(y_nodes.size() * size);
    parallel_for(y_nodes.size(), [&](std::size_t j) {
        const GridField slice = apply_modes(base, neumann_multiplier(base.distinct_xi2(), y_nodes[j], s, spec, false));
        std::copy(slice.values().begin(), slice.values().end(), values.begin() + j * size);
    });
    return ExtensionField(datum, std::vector<double>(y_nodes.begin(), y_nodes.end()), std::move(values), s,
                          ExtensionKind::neumann);
}

BesselIdentity bessel_k_identity(double s, double z, const QuadratureSpec& spec) {
    if (!(s > 0.0 && s < 1.0)) {
        throw Error(ErrorCode::domain, "Bessel identity needs 0 < s < 1");
    }
    if (!(z > 0.0)) {
        throw Error(ErrorCode::domain, "Bessel identity needs z > 0");
    }
    QuadratureSpec w = window_for(spec, z);
    w.tau_max = std::max(spec.tau_max, std::log(800.0));
    const MellinResult r = integrate_mellin([&](double t) { return std::exp(-t - z * z / (4.0 * t)); }, s, w);
    const double pre = 0.5 * std::pow(0.5 * z, s);
    BesselIdentity out;
    out.lhs = pre * r.value;
    out.error_estimate = pre * r.error_estimate;
    out.rhs = s == 0.5 ? std::sqrt(kPi / (2.0 * z)) * std::exp(-z) : std::cyl_bessel_k(s, z);
    return out;
}

double pde_residual(const ExtensionField& ext) {
    const std::size_t ny = ext.y_count();
    if (ny < 5) {
        throw Error(ErrorCode::validation, "PDE residual needs at least five y-nodes");
    }
    const double ss = ext.s().s();
    const std::vector<double> tau = detail::log_nodes(ext.y_nodes());
    const std::size_t size = ext.boundary().size();
    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < ny; ++j) {
        const double y = ext.y_nodes()[j];
        const GridField slice = ext.slice(j);
        const GridField lap = apply_radial_multiplier(slice, [](double xi2) { return -xi2; });
        const auto w = detail::fd_weights(std::span(tau).subspan(j - 2, 5), tau[j], 2);
        double res = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            double d1 = 0.0;
            double d2 = 0.0;
            for (std::size_t k = 0; k < 5; ++k) {
                const double v = ext.value(j - 2 + k, i);
                d1 += w[k][1] * v;
                d2 += w[k][2] * v;
            }
            const double a = y * y * lap[i];
            res = std::max(res, std::abs(a + d2 - 2.0 * ss * d1));
            scale = std::max(scale, std::abs(a) + std::abs(d2) + 2.0 * ss * std::abs(d1));
        }
        if (scale > 0.0) {
            worst = std::max(worst, res / scale);
        }
    }
    return worst;
}

void save_extension(const ExtensionField& ext, const std::filesystem::path& path) {
    const GridField& b = ext.boundary();
    FieldFileHeader h;
    h.n = b.n();
    h.points_per_axis = static_cast<std::uint32_t>(b.points_per_axis());
    h.y_count = static_cast<std::uint32_t>(ext.y_count());
    h.half_width = b.half_width();
    h.s = ext.s().s();
    auto bytes = encode_header(h);
    const auto kind = static_cast<std::uint32_t>(ext.kind());
    for (int k = 0; k < 4; ++k) {
        bytes.push_back(static_cast<unsigned char>((kind >> (8 * k)) & 0xffu));
    }
    bytes.insert(bytes.end(), 4, 0);
    for (double y : ext.y_nodes()) {
        append_f64(bytes, y);
    }
    for (double v : b.values()) {
        append_f64(bytes, v);
    }
    for (double v : ext.values()) {
        append_f64(bytes, v);
    }
    write_file_atomic(path, bytes);
}

ExtensionField load_extension(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const FieldFileHeader h = decode_header(bytes);
    if (h.y_count == 0) {
        throw Error(ErrorCode::header_mismatch, "file holds a grid field, not an extension field");
    }
    std::size_t size = 1;
    for (int i = 0; i < h.n; ++i) {
        size *= h.points_per_axis;
    }
    const std::size_t ny = h.y_count;
    const std::size_t expected = kFieldHeaderBytes + 8 + 8 * (ny + size + ny * size);
    if (bytes.size() != expected) {
        throw Error(ErrorCode::header_mismatch, "payload size does not match the extension header");
    }
    std::uint32_t kind = 0;
    for (int k = 0; k < 4; ++k) {
        kind |= static_cast<std::uint32_t>(bytes[kFieldHeaderBytes + k]) << (8 * k);
    }
    if (kind > 1) {
        throw Error(ErrorCode::header_mismatch, "unknown extension kind " + std::to_string(kind));
    }
    std::size_t at = kFieldHeaderBytes + 8;
    const auto take = [&](std::size_t count) {
        std::vector<double> v(count);
        for (double& x : v) {
            x = read_f64(bytes, at);
            at += 8;
        }
        return v;
    };
    std::vector<double> y = take(ny);
    GridField boundary(h.n, h.half_width, static_cast<int>(h.points_per_axis), take(size), path.filename().string());
    std::vector<double> values = take(ny * size);
    return ExtensionField(std::move(boundary), std::move(y), std::move(values), FracOrder(h.s),
                          static_cast<ExtensionKind>(kind));
}

}  // namespace fracsem

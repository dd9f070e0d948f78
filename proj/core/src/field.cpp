#include "fracsem/field.hpp"

#include "fracsem/error.hpp"
#include "fracsem/numerics.hpp"
#include "fracsem/quadrature.hpp"
#include "sphere_rule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fracsem {

double Decay::effective_power() const noexcept {
    switch (kind) {
        case Kind::schwartz: return std::numeric_limits<double>::infinity();
        case Kind::bounded: return 0.0;
        case Kind::tail_power: return power;
    }
    return 0.0;
}

bool is_power_of_two(long m) noexcept { return m > 0 && (m & (m - 1)) == 0; }

namespace {

std::size_t ipow(int base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= static_cast<std::size_t>(base);
    }
    return r;
}

}  // namespace

GridField::GridField(int n, double half_width, int points_per_axis, std::vector<double> values,
                     std::string source)
    : n_(n), half_width_(half_width), m_(points_per_axis), values_(std::move(values)),
      source_(std::move(source)) {
    require_dimension(n);
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw Error(ErrorCode::validation, "box half-width must be positive and finite");
    }
    if (!is_power_of_two(points_per_axis) || points_per_axis < 16) {
        throw Error(ErrorCode::validation,
                    "points per axis must be a power of two >= 16, got " + std::to_string(points_per_axis));
    }
    if (values_.size() != ipow(m_, n_)) {
        throw Error(ErrorCode::validation, "grid field needs exactly M^n values");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::validation, "grid field values must be finite");
        }
    }
}

GridField GridField::constant(int n, double half_width, int points_per_axis, double value) {
    require_dimension(n);
    return GridField(n, half_width, points_per_axis,
                     std::vector<double>(ipow(points_per_axis, n), value), "constant");
}

Point GridField::point(std::size_t i) const noexcept {
    Point p{0.0, 0.0, 0.0};
    for (int axis = n_ - 1; axis >= 0; --axis) {
        p[axis] = coordinate(static_cast<int>(i % m_));
        i /= m_;
    }
    return p;
}

std::size_t GridField::index(std::span<const long> multi) const noexcept {
    std::size_t flat = 0;
    for (int axis = 0; axis < n_; ++axis) {
        long j = multi[axis] % m_;
        if (j < 0) {
            j += m_;
        }
        flat = flat * m_ + static_cast<std::size_t>(j);
    }
    return flat;
}

std::size_t GridField::nearest_index(std::span<const double> x) const noexcept {
    std::array<long, 3> multi{0, 0, 0};
    for (int axis = 0; axis < n_; ++axis) {
        multi[axis] = std::lround((x[axis] + half_width_) / spacing());
    }
    return index(multi);
}

GridField GridField::with_values(std::vector<double> values, std::string source) const {
    return GridField(n_, half_width_, m_, std::move(values), source.empty() ? source_ : std::move(source));
}

bool GridField::same_geometry(const GridField& other) const noexcept {
    return n_ == other.n_ && m_ == other.m_ && half_width_ == other.half_width_;
}

double GridField::mean() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double GridField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double GridField::l2_norm_squared() const noexcept {
    double acc = 0.0;
    for (double v : values_) {
        acc += v * v;
    }
    return acc * std::pow(spacing(), n_);
}

GridField sample(const AnalyticField& f, double half_width, int points_per_axis) {
    require_dimension(f.n);
    if (!is_power_of_two(points_per_axis) || points_per_axis < 16) {
        throw Error(ErrorCode::validation, "points per axis must be a power of two >= 16");
    }
    if (!(half_width > 0.0)) {
        throw Error(ErrorCode::validation, "box half-width must be positive");
    }
    const std::size_t total = ipow(points_per_axis, f.n);
    std::vector<double> values(total);
    const double h = 2.0 * half_width / points_per_axis;
    for (std::size_t i = 0; i < total; ++i) {
        Point p{0.0, 0.0, 0.0};
        std::size_t rem = i;
        for (int axis = f.n - 1; axis >= 0; --axis) {
            p[axis] = -half_width + static_cast<double>(rem % points_per_axis) * h;
            rem /= points_per_axis;
        }
        const double v = f.at(p);
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::validation, "fixture '" + f.name + "' is not finite at a grid point");
        }
        values[i] = v;
    }
    return GridField(f.n, half_width, points_per_axis, std::move(values), f.name);
}

namespace {

}  // namespace

double ls_norm(const AnalyticField& f, double s, double inner_radius) {
    require_dimension(f.n);
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(ErrorCode::domain, "L_s norm is defined for 0 <= s <= 1");
    }
    const int n = f.n;
    const double p = f.decay.effective_power();
    if (p + 2.0 * s <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }

    const detail::SphereRule rule = detail::sphere_rule(n, 64);
    const double area = sphere_area(n);
    // A(r) = int_{S^{n-1}} |u(r w)| dw
    auto shell = [&](double r) {
        if (f.radial_profile) {
            return area * std::abs((*f.radial_profile)(r));
        }
        double acc = 0.0;
        Point x{0.0, 0.0, 0.0};
        for (std::size_t d = 0; d < rule.dirs.size(); ++d) {
            for (int a = 0; a < n; ++a) {
                x[a] = r * rule.dirs[d][a];
            }
            acc += rule.weights[d] * std::abs(f.at(x));
        }
        return acc;
    };
    auto radial = [&](double r) { return std::pow(r, n - 1) * shell(r) / (1.0 + std::pow(r, n + 2.0 * s)); };

    const double feature = f.feature_scale;
    const double corner = std::isfinite(f.support_radius) ? f.support_radius * std::sqrt(double(n)) : 0.0;
    const double core = std::max(std::isfinite(f.support_radius) ? corner : 40.0 * feature, inner_radius);
    const double panel = std::max(feature / 4.0, core / 4096.0);
    const std::array<double, 1> unit{1.0};
    double total = integrate_panels(radial, inner_radius, core, panel, 16, unit);

    if (std::isfinite(f.support_radius) || f.decay.kind == Decay::Kind::schwartz) {
        return total;
    }

    if (f.decay.kind == Decay::Kind::tail_power) {
        // log-spaced panels out to 1e8 * core, then the power-law remainder
        const double far = core * 1e8;
        auto in_log = [&](double tau) {
            const double r = std::exp(tau);
            return radial(r) * r;
        };
        total += integrate_panels(in_log, std::log(core), std::log(far), 0.25, 16);
        const double shell_far = shell(far);
        total += shell_far * std::pow(far, -2.0 * s) / (p + 2.0 * s);
        return total;
    }

    // bounded: linear panels to a far radius, then mean shell value times the
    // exact power integral
    if (s == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double far = std::max(core, 1024.0 * feature);
    total += integrate_panels(radial, core, far, feature / 4.0, 16);
    const double mean_shell =
        integrate_panels(shell, 0.5 * far, far, feature / 4.0, 16) / (0.5 * far) / area;
    total += area * mean_shell * std::pow(far, -2.0 * s) / (2.0 * s);
    return total;
}

double ls_norm(const GridField& g, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(ErrorCode::domain, "L_s norm is defined for 0 <= s <= 1");
    }
    const int n = g.n();
    const int m = g.points_per_axis();
    const double cell = std::pow(g.spacing(), n);
    double sum = 0.0;
    double boundary = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.point(i);
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) {
            r2 += x[a] * x[a];
        }
        sum += std::abs(g[i]) / (1.0 + std::pow(std::sqrt(r2), n + 2.0 * s));
        std::size_t rem = i;
        for (int a = 0; a < n; ++a) {
            const auto j = static_cast<int>(rem % m);
            rem /= m;
            if (j == 0 || j == m - 1) {
                boundary = std::max(boundary, std::abs(g[i]));
                break;
            }
        }
    }
    double tail = 0.0;
    if (boundary > 0.0) {
        if (s == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        tail = boundary * sphere_area(n) * std::pow(g.half_width(), -2.0 * s) / (2.0 * s);
    }
    return sum * cell + tail;
}

}  // namespace fracsem

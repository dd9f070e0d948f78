#include "fracsem/regularity.hpp"

#include "fracsem/error.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/inverse.hpp"
#include "fracsem/parallel.hpp"
#include "fracsem/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fracsem {

namespace {

// sup_x |d^k/dt^k e^{t Delta}u| for each t
std::vector<double> heat_sup(const GridField& u, int k, std::span<const double> t_grid,
                             std::span<const std::size_t> x_probe) {
    const Spectrum base(u);
    const auto& xi2 = base.distinct_xi2();
    std::vector<double> out(t_grid.size(), 0.0);
    parallel_for(t_grid.size(), [&](std::size_t it) {
        const double t = t_grid[it];
        std::vector<double> mult(xi2.size());
        for (std::size_t d = 0; d < xi2.size(); ++d) {
            mult[d] = std::pow(-xi2[d], k) * std::exp(-t * xi2[d]);
        }
        Spectrum sp = base;
        sp.apply_distinct(mult);
        const GridField v = sp.to_field();
        double peak = 0.0;
        if (x_probe.empty()) {
            peak = v.max_abs();
        } else {
            for (const std::size_t i : x_probe) {
                if (i >= v.size()) {
                    throw Error(ErrorCode::validation, "probe index outside the grid");
                }
                peak = std::max(peak, std::abs(v[i]));
            }
        }
        out[it] = peak;
    });
    return out;
}

void check_t_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) {
        throw Error(ErrorCode::validation, "empty t grid");
    }
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i]) || (i > 0 && t_grid[i] <= t_grid[i - 1])) {
            throw Error(ErrorCode::validation, "t grid must be positive and increasing");
        }
    }
}

// max over x, axes and dyadic shifts of |D_h v(x)| / h^p, D_h the first or
// second (symmetric) difference
double dyadic_quotient(const GridField& u, int axis_order, double p, bool second) {
    const int n = u.n();
    const long m = u.points_per_axis();
    double best = 0.0;
    for (int axis = 0; axis < n; ++axis) {
        const GridField v = axis_order > 0 ? spectral_derivative(u, axis, axis_order) : u;
        for (long cells = 1; cells * u.spacing() <= 0.25 * u.half_width() + 1e-12 && cells < m; cells *= 2) {
            const double h = cells * u.spacing();
            std::array<long, 3> fwd{0, 0, 0};
            std::array<long, 3> bwd{0, 0, 0};
            fwd[axis] = -cells;  // shift_cells(v, -c)(x) = v(x + c h)
            bwd[axis] = cells;
            const GridField vp = shift_cells(v, std::span<const long>(fwd.data(), n));
            const GridField vm = shift_cells(v, std::span<const long>(bwd.data(), n));
            const double scale = std::pow(h, p);
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double d = second ? vp[i] + vm[i] - 2.0 * v[i] : vp[i] - v[i];
                best = std::max(best, std::abs(d) / scale);
            }
        }
    }
    return best;
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

}  // namespace

std::vector<double> regularity_t_grid(int per_decade, double t_min, double t_max) {
    if (per_decade < 1 || !(t_min > 0.0) || !(t_max > t_min)) {
        throw Error(ErrorCode::validation, "bad t grid parameters");
    }
    const double decades = std::log10(t_max / t_min);
    const auto count = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9)) + 1;
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) {
        t[i] = t_min * std::pow(10.0, std::min(decades, double(i) / per_decade));
    }
    t.back() = t_max;
    return t;
}

int lambda_order(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorCode::domain, "Lambda^alpha needs alpha > 0");
    }
    return static_cast<int>(std::floor(alpha / 2.0)) + 1;
}

double lambda_seminorm(const GridField& u, double alpha, int k, std::span<const double> t_grid,
                       std::span<const std::size_t> x_probe) {
    if (!(alpha > 0.0) || k < 1 || 2.0 * k <= alpha) {
        throw Error(ErrorCode::domain, "Lambda^alpha seminorm needs 0 < alpha < 2k");
    }
    check_t_grid(t_grid);
    const auto sup = heat_sup(u, k, t_grid, x_probe);
    double best = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        best = std::max(best, std::pow(t_grid[i], k - 0.5 * alpha) * sup[i]);
    }
    return best;
}

RegularityReport estimate_alpha(const GridField& u, int k, std::span<const double> t_grid) {
    if (k < 1) {
        throw Error(ErrorCode::validation, "semigroup order k must be at least 1");
    }
    RegularityReport rep;
    rep.k_used = k;
    if (t_grid.empty()) {
        rep.t_grid = regularity_t_grid();
    } else {
        check_t_grid(t_grid);
        rep.t_grid.assign(t_grid.begin(), t_grid.end());
    }
    const double h2 = u.spacing() * u.spacing();
    rep.fit_t_min = h2;
    rep.fit_t_max = 100.0 * h2;

    const auto sup = heat_sup(u, k, rep.t_grid, {});
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
        const double t = rep.t_grid[i];
        if (t >= rep.fit_t_min * (1.0 - 1e-12) && t <= rep.fit_t_max * (1.0 + 1e-12) && sup[i] > 0.0) {
            lx.push_back(std::log(t));
            ly.push_back(std::log(sup[i]));
        }
    }
    rep.fit_points = lx.size();
    if (lx.size() < 3) {
        throw Error(ErrorCode::fit_residual, "fewer than three usable t values in the fit window");
    }
    const double cnt = double(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= cnt;
    my /= cnt;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + slope * (lx[i] - mx));
        rss += r * r;
    }
    rep.fit_residual = std::sqrt(rss / cnt);
    rep.alpha_est = 2.0 * (k + slope);
    if (!(rep.fit_residual <= kMaxFitResidual)) {
        throw Error(ErrorCode::fit_residual, "log-log fit residual " + std::to_string(rep.fit_residual) +
                                                 " exceeds " + std::to_string(kMaxFitResidual));
    }
    rep.saturated = rep.alpha_est >= 2.0 * k - 0.1;
    if (rep.alpha_est > 0.0 && rep.alpha_est < 2.0 * k) {
        double best = 0.0;
        for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
            best = std::max(best, std::pow(rep.t_grid[i], k - 0.5 * rep.alpha_est) * sup[i]);
        }
        rep.seminorm_semigroup = best;
    }
    rep.seminorm_zygmund = zygmund_seminorm(u, 1);
    return rep;
}

double zygmund_seminorm(const GridField& u, int order) {
    if (order < 1) {
        throw Error(ErrorCode::validation, "Zygmund order must be at least 1");
    }
    return dyadic_quotient(u, order - 1, 1.0, true);
}

double holder_seminorm(const GridField& u, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw Error(ErrorCode::domain, "Holder exponent must lie in (0, 1]");
    }
    return dyadic_quotient(u, 0, alpha, false);
}

std::string to_string(MappingMode mode) {
    switch (mode) {
        case MappingMode::holder_forward:
            return "holder_forward";
        case MappingMode::schauder_inverse:
            return "schauder_inverse";
        case MappingMode::schauder_bounded:
            return "schauder_bounded";
    }
    return "unknown";
}

MappingTable verify_mapping(std::span<const GridField> fields, double s, double alpha, MappingMode mode,
                            std::span<const double> t_grid) {
    const FracOrder order(s);
    order.require_operator_range();
    std::vector<double> own_grid;
    if (t_grid.empty()) {
        own_grid = regularity_t_grid();
        t_grid = own_grid;
    }
    check_t_grid(t_grid);

    MappingTable table;
    table.mode = mode;
    table.s = s;
    table.alpha = mode == MappingMode::schauder_bounded ? 0.0 : alpha;
    double alpha_out = 0.0;
    switch (mode) {
        case MappingMode::holder_forward:
            alpha_out = alpha - 2.0 * s;
            if (!(alpha_out > 0.0)) {
                throw Error(ErrorCode::domain, "forward mapping needs alpha > 2s");
            }
            break;
        case MappingMode::schauder_inverse:
            if (!(alpha > 0.0)) {
                throw Error(ErrorCode::domain, "inverse mapping needs alpha > 0");
            }
            alpha_out = alpha + 2.0 * s;
            break;
        case MappingMode::schauder_bounded:
            alpha_out = 2.0 * s;
            break;
    }

    for (const GridField& f : fields) {
        MappingRow row;
        row.fixture = f.source();
        row.alpha_in = table.alpha;
        row.alpha_out = alpha_out;
        GridField out = mode == MappingMode::holder_forward ? frac_apply_spectral(f, order)
                                                             : frac_inverse_spectral(f, s).field;
        if (mode == MappingMode::schauder_bounded) {
            row.input_seminorm = f.max_abs();
        } else {
            row.input_seminorm = lambda_seminorm(f, alpha, lambda_order(alpha), t_grid);
        }
        row.output_seminorm = lambda_seminorm(out, alpha_out, lambda_order(alpha_out), t_grid);
        if (is_integer(alpha_out)) {
            row.output_zygmund = zygmund_seminorm(out, static_cast<int>(std::round(alpha_out)));
        }
        if (row.input_seminorm == 0.0) {
            throw Error(ErrorCode::validation, "fixture '" + row.fixture + "' has zero input seminorm");
        }
        row.ratio = row.output_seminorm / row.input_seminorm;
        table.sup_ratio = std::max(table.sup_ratio, row.ratio);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace fracsem

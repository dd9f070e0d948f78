#include "fracsem/extension.hpp"

#include "fracsem/error.hpp"
#include "fracsem/spectral.hpp"
#include "log_grid.hpp"
#include "sphere_rule.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace fracsem {

namespace {

// Box integral of |v|^2 is (2L)^n / M^{2n} sum mult |c|^2.
double parseval_scale(int n, double half_width, int m) {
    return std::pow(2.0 * half_width, n) / std::pow(double(m), 2.0 * n);
}

struct Mode {
    Point xi{0.0, 0.0, 0.0};
    double power = 0.0;  // scaled mult |c|^2
};

double energy_from(std::span<const double> y, std::span<const double> grad, std::span<const double> dtau,
                   double a, double s, double decay_rate) {
    const std::size_t ny = y.size();
    std::vector<double> f(ny);
    std::vector<double> g(ny);
    std::vector<double> h(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        g[j] = std::pow(y[j], a + 1.0) * grad[j];
        h[j] = std::pow(y[j], a - 1.0) * dtau[j];
        f[j] = g[j] + h[j];
    }
    double e = 0.0;
    for (std::size_t j = 1; j < ny; ++j) {
        e += 0.5 * (f[j] + f[j - 1]) * std::log(y[j] / y[j - 1]);
    }
    // below y_min: |grad_x U|^2 -> const and U_tau ~ y^{2s}
    e += g.front() / (2.0 - 2.0 * s) + h.front() / (2.0 * s);
    // above y_max: modes decay at least like e^{-2 xi_min y}
    if (decay_rate > 0.0) {
        e += f.back() / (decay_rate * y.back());
    }
    return e;
}

}  // namespace

HsSeminorm hs_seminorm(const GridField& u, FracOrder s) {
    s.require_operator_range();
    const int n = u.n();
    const double ss = s.s();
    const Spectrum sp(u);
    const double vol = parseval_scale(n, u.half_width(), u.points_per_axis());
    const auto coeffs = sp.coefficients();

    HsSeminorm out;
    double peak = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const double p = vol * sp.multiplicity(i) * std::norm(coeffs[i]);
        out.spectral += p * std::pow(sp.xi2(i), ss);
        peak = std::max(peak, p);
    }
    if (peak == 0.0) {
        return out;
    }

    std::vector<Mode> modes;
    double xi_sig = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const double p = vol * sp.multiplicity(i) * std::norm(coeffs[i]);
        if (sp.xi2(i) == 0.0 || p < 1e-14 * peak) {
            continue;
        }
        Mode m;
        for (int a = 0; a < n; ++a) {
            m.xi[a] = sp.wavenumber(i, a);
        }
        m.power = p;
        modes.push_back(m);
        xi_sig = std::max(xi_sig, std::sqrt(sp.xi2(i)));
    }

    // S(h) = int |u(x + h) - u(x)|^2 dx, exact for the trigonometric interpolant
    const double R = u.half_width();
    const int azimuthal = std::max(64, 2 * static_cast<int>(std::ceil(xi_sig * R)) + 8);
    const detail::SphereRule rule = detail::sphere_rule(n, azimuthal);
    const auto shell = [&](double r) {
        double acc = 0.0;
        for (std::size_t d = 0; d < rule.dirs.size(); ++d) {
            double sd = 0.0;
            for (const Mode& m : modes) {
                double phase = 0.0;
                for (int a = 0; a < n; ++a) {
                    phase += m.xi[a] * rule.dirs[d][a];
                }
                sd += m.power * 2.0 * (1.0 - std::cos(r * phase));
            }
            acc += rule.weights[d] * sd;
        }
        return acc;
    };
    const auto radial = [&](double r) { return shell(r) * std::pow(r, -1.0 - 2.0 * ss); };
    // S oscillates no faster than the largest significant wavenumber
    const double knee = std::min(u.spacing(), R);
    double integral = integrate_graded(radial, 0.0, knee);
    integral += integrate_panels(radial, knee, R, std::min(kPi / xi_sig, R));

    // Beyond |h| = L the structure function of the periodic u oscillates about
    // its cell average 2 sum_{xi != 0} P_xi; the oscillating part is bounded
    // mode by mode through the decay of the angular average of cos(xi.h).
    const double c = 0.5 * c_ns(n, s);
    const double area = sphere_area(n);
    double mean_power = 0.0;
    double oscillation = 0.0;
    for (const Mode& m : modes) {
        const double xi = std::sqrt(m.xi[0] * m.xi[0] + m.xi[1] * m.xi[1] + m.xi[2] * m.xi[2]);
        mean_power += m.power;
        if (n == 1) {
            oscillation += m.power * 2.0 * 2.0 * std::pow(R, -1.0 - 2.0 * ss) / xi;
        } else if (n == 2) {
            oscillation += m.power * 2.0 * area * std::sqrt(2.0 / (kPi * xi)) * std::pow(R, -0.5 - 2.0 * ss) /
                           (0.5 + 2.0 * ss);
        } else {
            oscillation += m.power * 2.0 * area * std::pow(R, -1.0 - 2.0 * ss) / ((1.0 + 2.0 * ss) * xi);
        }
    }
    out.gagliardo = c * (integral + 2.0 * mean_power * area * std::pow(R, -2.0 * ss) / (2.0 * ss));
    out.tail_bound = c * oscillation;
    return out;
}

ExtensionEnergy extension_energy(const ExtensionField& ext) {
    const std::size_t ny = ext.y_count();
    if (ny < 5) {
        throw Error(ErrorCode::validation, "extension energy needs at least five y-nodes");
    }
    const GridField& b = ext.boundary();
    const double ss = ext.s().s();
    const double a = ext.s().a();
    const double vol = parseval_scale(b.n(), b.half_width(), b.points_per_axis());

    std::vector<Spectrum> spectra;
    spectra.reserve(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        spectra.emplace_back(ext.slice(j));
    }
    const Spectrum& ref = spectra.front();
    const double decay_rate = 2.0 * kPi / b.half_width();

    // |grad_x U|^2 and |U_tau|^2 integrated over x, on a node subset
    const auto energy_on = [&](const std::vector<std::size_t>& nodes) {
        const std::size_t count = nodes.size();
        std::vector<double> y(count);
        std::vector<double> tau(count);
        for (std::size_t k = 0; k < count; ++k) {
            y[k] = ext.y_nodes()[nodes[k]];
            tau[k] = std::log(y[k]);
        }
        std::vector<double> grad(count, 0.0);
        std::vector<double> dtau(count, 0.0);
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t start = detail::stencil_start(k, count);
            const auto w = detail::fd_weights(std::span(tau).subspan(start, 5), tau[k], 1);
            const auto ck = spectra[nodes[k]].coefficients();
            for (std::size_t i = 0; i < ref.size(); ++i) {
                const double mult = ref.multiplicity(i);
                grad[k] += vol * mult * ref.xi2(i) * std::norm(ck[i]);
                std::complex<double> d = 0.0;
                for (std::size_t q = 0; q < 5; ++q) {
                    d += w[q][1] * spectra[nodes[start + q]].coefficients()[i];
                }
                dtau[k] += vol * mult * std::norm(d);
            }
        }
        return energy_from(y, grad, dtau, a, ss, decay_rate);
    };

    std::vector<std::size_t> all(ny);
    std::vector<std::size_t> half;
    for (std::size_t j = 0; j < ny; ++j) {
        all[j] = j;
        if (j % 2 == 0 || j + 1 == ny) {
            half.push_back(j);
        }
    }
    ExtensionEnergy out;
    out.value = energy_on(all);
    if (half.size() >= 5) {
        const double coarse = energy_on(half);
        out.refinement_change = out.value == 0.0 ? 0.0 : std::abs(out.value - coarse) / std::abs(out.value);
        out.y_grid_too_coarse = out.refinement_change > 1e-2;
    }
    return out;
}

}  // namespace fracsem

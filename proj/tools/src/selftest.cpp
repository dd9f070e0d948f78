#include "fracsem_cli/run.hpp"

#include "fracsem/extension.hpp"
#include "fracsem/field_io.hpp"
#include "fracsem/fixtures.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/inverse.hpp"
#include "fracsem/limits.hpp"
#include "fracsem/regularity.hpp"
#include "fracsem/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace fracsem::cli {

namespace {

// H_n - ln n with the Euler-Maclaurin tail
double euler_gamma_from_harmonic() {
    constexpr int n = 10000;
    double h = 0.0;
    for (int k = n; k >= 1; --k) {
        h += 1.0 / k;
    }
    const double m = n;
    return h - std::log(m) - 1.0 / (2.0 * m) + 1.0 / (12.0 * m * m) - 1.0 / (120.0 * m * m * m * m);
}

struct Suite {
    std::vector<Invariant> items;

    void below(std::string name, double value, double tolerance) {
        items.push_back({std::move(name), value, tolerance, value <= tolerance});
    }
};

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

void scalar_identities(Suite& suite) {
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double s = 0.1 * i;
        for (double lambda : {0.5, 1.0, 2.0, 10.0}) {
            const double pos = integrate_mellin([lambda](double t) { return std::expm1(-lambda * t); }, s, {},
                                                MellinTails{1.0, 0.0})
                                   .value /
                               gamma(-s);
            const double neg =
                integrate_mellin([lambda](double t) { return std::exp(-lambda * t); }, -s, {}, MellinTails{0.0, {}})
                    .value /
                gamma(s);
            worst = std::max(worst, std::abs(pos / std::pow(lambda, s) - 1.0));
            worst = std::max(worst, std::abs(neg / std::pow(lambda, -s) - 1.0));
        }
    }
    suite.below("scalar.lambda_pow_pm_s", worst, 1e-8);
}

void kernel_identities(Suite& suite) {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (double s : {0.25, 0.5, 0.75}) {
            for (double r : {0.5, 1.0, 2.0}) {
                const KernelIdentity k = kernel_identity_check(n, FracOrder(s), r);
                worst = std::max(worst, std::abs(k.lhs / k.rhs - 1.0));
            }
        }
    }
    suite.below("kernel.identity_sweep", worst, 1e-8);
    suite.below("kernel.c_1_half_is_inv_pi",
                std::abs(kernel_identity_check(1, FracOrder(0.5), 1.0).lhs - 1.0 / kPi), 1e-10);
}

void route_agreement(Suite& suite, std::uint64_t seed) {
    const AnalyticField g = fixtures::gaussian(1, 1.0);
    const AnalyticField per = fixtures::periodized(g, 12.0);
    const GridField u = sample(g, 12.0, 256);
    const FracOrder s(0.5);
    const GridField spec = frac_apply_spectral(u, s);
    const GridField semi = frac_apply_semigroup(u, s).field;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(64, 191);
    double worst = 0.0;
    for (int p = 0; p < 5; ++p) {
        const int j = pick(rng);
        const std::array<double, 1> x{u.coordinate(j)};
        const std::array<double, 4> v{spec[j], semi[j], frac_apply_semigroup(per, x, s).value,
                                      frac_apply_pointwise(per, x, s).value};
        for (std::size_t a = 0; a < v.size(); ++a) {
            for (std::size_t b = a + 1; b < v.size(); ++b) {
                worst = std::max(worst, std::abs(v[a] - v[b]));
            }
        }
    }
    suite.below("routes.gaussian_1d_pairwise", worst, 1e-4);
}

void limit_theorems(Suite& suite) {
    const AnalyticField g = fixtures::gaussian(1, 1.0);
    const std::array<double, 1> x0{0.0};
    const std::vector<double> up{0.9, 0.99, 0.999};
    const std::vector<double> down{0.1, 0.01, 0.001};
    const LimitTable a = limit_diagnostics(g, x0, LimitDirection::s_to_1, up);
    const LimitTable b = limit_diagnostics(g, x0, LimitDirection::s_to_0, down);
    suite.below("limits.s_to_1_relative_gap", a.rows.back().gap / std::abs(a.rows.back().target), 1e-2);
    suite.below("limits.s_to_0_relative_gap", b.rows.back().gap / std::abs(b.rows.back().target), 1e-2);
    suite.below("limits.non_monotone_sweeps", (a.monotone ? 0.0 : 1.0) + (b.monotone ? 0.0 : 1.0), 0.0);
}

void inverse_checks(Suite& suite) {
    const GridField f = sample(fixtures::bump(1, 1.5, Point{0.3, 0.0, 0.0}), 6.0, 256);
    double worst = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
        const InverseGridResult inv = frac_inverse_spectral(f, s);
        const GridField back = frac_apply_spectral(inv.field, FracOrder(s));
        for (std::size_t i = 0; i < f.size(); ++i) {
            worst = std::max(worst, std::abs(back[i] - (f[i] - inv.removed_mean)));
        }
    }
    suite.below("inverse.spectral_round_trip", worst, 1e-8);

    const AnalyticField pair = fixtures::by_name("bump_pair", 1, {{"r0", 1.0}, {"shift", 2.5}});
    double gap = 0.0;
    for (double x : {-1.25, 0.0, 0.7}) {
        const std::array<double, 1> xs{x};
        gap = std::max(gap, std::abs(riesz_convolve(pair, xs, 0.5).value - frac_inverse_semigroup(pair, xs, 0.5).value));
    }
    suite.below("inverse.riesz_log_kernel_vs_semigroup", gap, 1e-4);
    const std::array<double, 1> one{1.0};
    suite.below("inverse.euler_gamma_from_log_kernel", std::abs(-2.0 * kPi * riesz_kernel(1, 0.5, one) - euler_gamma_from_harmonic()),
                1e-6);
}

void extension_checks(Suite& suite) {
    double norm = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
        for (double y : {0.1, 1.0, 10.0}) {
            norm = std::max(norm, std::abs(kernel_normalization(y, FracOrder(s)) - 1.0));
        }
    }
    suite.below("extension.kernel_normalization", norm, 1e-10);
    suite.below("extension.bessel_k_half_at_1",
                std::abs(bessel_k_identity(0.5, 1.0).lhs - std::sqrt(kPi / 2.0) * std::exp(-1.0)), 1e-8);

    const GridField u = sample(fixtures::gaussian(1, 1.0), 12.0, 256);
    const std::vector<double> y = log_y_nodes();
    const ExtensionField half = extend(u, FracOrder(0.5), y);
    double poisson = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const GridField p = apply_radial_multiplier(u, [&](double xi2) { return std::exp(-y[j] * std::sqrt(xi2)); });
        poisson = std::max(poisson, max_diff(half.slice(j).values(), p.values()));
    }
    suite.below("extension.half_is_poisson_semigroup", poisson, 1e-8);

    const ExtensionField ref = extend(u, FracOrder(0.3), y);
    double routes = 0.0;
    for (ExtensionRoute r : {ExtensionRoute::subordination, ExtensionRoute::semigroup_frac,
                             ExtensionRoute::poisson_kernel}) {
        const ExtensionField e = extend(u, FracOrder(0.3), y, r);
        routes = std::max(routes, max_diff(e.values(), ref.values()));
    }
    suite.below("extension.four_routes_agree", routes, 1e-5);

    double neumann = 0.0;
    double quotient = 0.0;
    for (double s : {0.3, 0.5, 0.7}) {
        const FracOrder fs(s);
        const ExtensionField e = s == 0.3 ? ref : extend(u, fs, y);
        neumann = std::max(neumann, std::abs(neumann_limit(e).constant_ratio / cs_neumann(fs) - 1.0));
        quotient = std::max(quotient, std::abs(quotient_limit(e).constant_ratio / cs_quotient(fs) - 1.0));
    }
    suite.below("extension.neumann_constant", neumann, 1e-2);
    suite.below("extension.quotient_constant", quotient, 1e-2);

    const FracOrder s3(0.3);
    const double energy = extension_energy(ref).value;
    suite.below("energy.gaussian_s0.3", std::abs(energy / (cs_neumann(s3) * hs_seminorm(u, s3).spectral) - 1.0),
                2e-2);
    const GridField w = sample(fixtures::plane_wave(1, 1.0), kPi, 32);
    const double wave = extension_energy(extend(w, FracOrder(0.7), y)).value;
    suite.below("energy.plane_wave_s0.7", std::abs(wave / (cs_neumann(FracOrder(0.7)) * w.l2_norm_squared()) - 1.0),
                2e-2);
}

void regularity_checks(Suite& suite) {
    const GridField lac = sample(fixtures::lacunary(1, 0.5, 30), kPi, 256);
    const double a1 = estimate_alpha(lac, 1).alpha_est;
    const double a2 = estimate_alpha(lac, 2).alpha_est;
    suite.below("regularity.lacunary_0.5_recovered", std::abs(a1 - 0.5), 0.1);
    suite.below("regularity.k_independence", std::abs(a1 - a2), 0.05);

    const auto t = regularity_t_grid();
    const double m1 = lambda_seminorm(sample(fixtures::plane_wave(1, 2.0), kPi, 64), 0.8, 1, t);
    const double m2 = lambda_seminorm(sample(fixtures::plane_wave(1, 4.0), kPi, 64), 0.8, 1, t);
    suite.below("regularity.mode_doubling_2_pow_alpha", std::abs(m2 / m1 / std::pow(2.0, 0.8) - 1.0), 1e-3);

    const auto endpoint = [](int m) {
        const std::vector<GridField> f{sample(fixtures::abs_power_bump(1, 0.5, 1.0), 2.0, m)};
        return verify_mapping(f, 0.25, 0.5, MappingMode::schauder_inverse).rows[0];
    };
    const MappingRow coarse = endpoint(128);
    const MappingRow fine = endpoint(256);
    suite.below("regularity.zygmund_endpoint_grid_change",
                std::max(std::abs(fine.ratio / coarse.ratio - 1.0),
                         std::abs(fine.output_zygmund / coarse.output_zygmund - 1.0)),
                5e-2);
}

void maximum_principle(Suite& suite, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-1.5, 1.5);
    std::uniform_real_distribution<double> width(0.6, 2.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    std::uniform_real_distribution<double> order(0.1, 0.9);
    double worst = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = centre(rng);
        const AnalyticField dip = fixtures::combine(
            1.0, fixtures::constant(1, 1.0), -1.0,
            fixtures::translate(fixtures::plane_wave(1, freq(rng)), Point{x0, 0.0, 0.0}));
        const AnalyticField u = fixtures::product(fixtures::gaussian(1, width(rng)), dip);
        const std::array<double, 1> xs{x0};
        worst = std::max(worst, frac_apply_semigroup(u, xs, FracOrder(order(rng))).value);
    }
    suite.below("max_principle.worst_value_at_zero", worst, 1e-10);
}

void persistence(Suite& suite, const std::filesystem::path& scratch) {
    const GridField g = sample(fixtures::gaussian(2, 1.0), 5.0, 32);
    save_field(g, scratch / "field.fsgf", 0.3);
    const GridField back = load_field(scratch / "field.fsgf");
    const bool same = back.size() == g.size() &&
                      std::memcmp(back.values().data(), g.values().data(), sizeof(double) * g.size()) == 0;
    suite.below("persistence.field_bitwise_mismatch", same ? 0.0 : 1.0, 0.0);

    const GridField u = sample(fixtures::gaussian(1, 1.0), 6.0, 32);
    const ExtensionField e = extend(u, FracOrder(0.4), log_y_nodes(8));
    save_extension(e, scratch / "ext.fsgf");
    const ExtensionField eb = load_extension(scratch / "ext.fsgf");
    const bool ext_same = eb.values().size() == e.values().size() &&
                          std::memcmp(eb.values().data(), e.values().data(), sizeof(double) * e.values().size()) == 0;
    suite.below("persistence.extension_bitwise_mismatch", ext_same ? 0.0 : 1.0, 0.0);
}

}  // namespace

std::vector<Invariant> selftest_invariants(std::uint64_t seed, const std::filesystem::path& scratch_dir) {
    Suite suite;
    scalar_identities(suite);
    kernel_identities(suite);
    route_agreement(suite, seed);
    limit_theorems(suite);
    inverse_checks(suite);
    extension_checks(suite);
    regularity_checks(suite);
    maximum_principle(suite, seed);
    persistence(suite, scratch_dir);
    return suite.items;
}

}  // namespace fracsem::cli

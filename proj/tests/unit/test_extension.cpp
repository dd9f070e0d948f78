#include <doctest.h>

#include "fracsem/extension.hpp"
#include "fracsem/field_io.hpp"
#include "fracsem/fixtures.hpp"
#include "fracsem/inverse.hpp"
#include "fracsem/spectral.hpp"
#include "oracle_values.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>

using namespace fracsem;

namespace {

const std::array<ExtensionRoute, 4> kRoutes{ExtensionRoute::semigroup_dirichlet, ExtensionRoute::subordination,
                                            ExtensionRoute::semigroup_frac, ExtensionRoute::poisson_kernel};

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

GridField gaussian_1d() { return sample(fixtures::gaussian(1, 1.0), 12.0, 256); }

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("fracsem_ext_" + name);
}

}  // namespace

TEST_CASE("heat-kernel weights integrate to one") {
    for (double s : {0.25, 0.3, 0.5, 0.75}) {
        for (double y : {0.1, 1.0, 10.0}) {
            CHECK(std::abs(kernel_normalization(y, FracOrder(s)) - 1.0) < 1e-10);
        }
    }
    const double a = kernel_normalization(0.1, FracOrder(0.25));
    CHECK(std::abs(a - kernel_normalization(10.0, FracOrder(0.25))) < 1e-10);
}

TEST_CASE("Bessel K integral identity") {
    const BesselIdentity one = bessel_k_identity(0.5, 1.0);
    CHECK(std::abs(one.lhs - oracle::kBesselK_half_1) < 1e-10);
    CHECK(std::abs(one.rhs - oracle::kBesselK_half_1) < 1e-15);
    CHECK(std::abs(bessel_k_identity(0.5, 2.0).lhs - oracle::kBesselK_half_2) < 1e-10);
    const BesselIdentity odd = bessel_k_identity(0.3, 1.5);
    CHECK(odd.lhs == doctest::Approx(oracle::kBesselK_03_15).epsilon(1e-10));
    CHECK(odd.rhs == doctest::Approx(oracle::kBesselK_03_15).epsilon(1e-12));
    QuadratureSpec fine;
    fine.nodes_per_decade = 32;
    CHECK(std::abs(bessel_k_identity(0.3, 1.5, fine).lhs - odd.lhs) < 1e-10);
    CHECK_THROWS_AS(bessel_k_identity(0.5, 0.0), Error);
}

TEST_CASE("plane waves extend by the Bessel multiplier") {
    const GridField w = sample(fixtures::plane_wave(1, 1.0), kPi, 32);
    const std::vector<double> y{0.25, 1.0, 4.0};
    for (ExtensionRoute route : kRoutes) {
        const ExtensionField half = extend(w, FracOrder(0.5), y, route);
        for (std::size_t j = 0; j < y.size(); ++j) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                CHECK(std::abs(half.value(j, i) - std::exp(-y[j]) * w[i]) < 1e-8);
            }
        }
        const std::vector<double> at_one{1.0};
        const ExtensionField lo = extend(w, FracOrder(0.25), at_one, route);
        const ExtensionField hi = extend(w, FracOrder(0.75), at_one, route);
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(std::abs(lo.value(0, i) - oracle::kExtMultiplier_s0p25_z1 * w[i]) < 1e-10);
            CHECK(std::abs(hi.value(0, i) - oracle::kExtMultiplier_s0p75_z1 * w[i]) < 1e-10);
        }
    }
}

TEST_CASE("the four routes agree on grids") {
    const std::vector<double> y = log_y_nodes();
    SUBCASE("one dimension") {
        const GridField u = gaussian_1d();
        for (double s : {0.25, 0.5, 0.75}) {
            const ExtensionField ref = extend(u, FracOrder(s), y);
            for (ExtensionRoute route : kRoutes) {
                CHECK(max_diff(extend(u, FracOrder(s), y, route).values(), ref.values()) < 1e-5);
            }
        }
    }
    SUBCASE("two dimensions") {
        const GridField u = sample(fixtures::bump(2, 2.0), 6.0, 32);
        const std::vector<double> few{1e-3, 0.1, 1.0, 5.0};
        for (double s : {0.25, 0.75}) {
            const ExtensionField ref = extend(u, FracOrder(s), few);
            for (ExtensionRoute route : kRoutes) {
                CHECK(max_diff(extend(u, FracOrder(s), few, route).values(), ref.values()) < 1e-5);
            }
        }
    }
}

TEST_CASE("point routes on R against the Fourier oracle") {
    const AnalyticField g = fixtures::gaussian(1, 1.0);
    const std::array<double, 1> x{0.7};
    struct Case {
        double s;
        double y;
        double want;
    };
    const std::array<Case, 4> cases{Case{0.3, 0.5, oracle::kExtGauss_s0p3_x0p7_y0p5},
                                    Case{0.3, 3.0, oracle::kExtGauss_s0p3_x0p7_y3},
                                    Case{0.7, 0.5, oracle::kExtGauss_s0p7_x0p7_y0p5},
                                    Case{0.7, 3.0, oracle::kExtGauss_s0p7_x0p7_y3}};
    for (const Case& c : cases) {
        for (ExtensionRoute route :
             {ExtensionRoute::semigroup_dirichlet, ExtensionRoute::subordination, ExtensionRoute::poisson_kernel}) {
            CHECK(extend_at(g, x, c.y, FracOrder(c.s), route).value == doctest::Approx(c.want).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(extend_at(g, x, 1.0, FracOrder(0.5), ExtensionRoute::semigroup_frac), Error);
    CHECK_THROWS_AS(extend_at(g, x, 0.0, FracOrder(0.5)), Error);
}

TEST_CASE("half-Laplacian extension is the Poisson semigroup") {
    const GridField u = gaussian_1d();
    const std::vector<double> y = log_y_nodes();
    const ExtensionField ext = extend(u, FracOrder(0.5), y);
    for (std::size_t j = 0; j < y.size(); ++j) {
        const GridField p = apply_radial_multiplier(u, [&](double xi2) { return std::exp(-y[j] * std::sqrt(xi2)); });
        CHECK(max_diff(ext.slice(j).values(), p.values()) < 1e-8);
    }
}

TEST_CASE("boundary values, constants, contraction and decay") {
    const GridField u = gaussian_1d();
    for (double s : {0.5, 0.75}) {
        const std::vector<double> tiny{1e-9};
        CHECK(extend(u, FracOrder(s), tiny).boundary_gap() < 1e-6);
    }
    const GridField one = GridField::constant(1, 12.0, 64, 1.0);
    const std::vector<double> y = log_y_nodes();
    for (ExtensionRoute route : kRoutes) {
        const ExtensionField e = extend(one, FracOrder(0.3), y, route);
        for (double v : e.values()) {
            CHECK(std::abs(v - 1.0) < 1e-12);
        }
    }
    const ExtensionField e = extend(u, FracOrder(0.3), y);
    for (std::size_t j = 0; j < y.size(); ++j) {
        const GridField slice = e.slice(j);
        CHECK(slice.max_abs() <= u.max_abs() + 1e-10);
        CHECK(slice.l2_norm_squared() <= u.l2_norm_squared() * (1.0 + 1e-12));
    }
    // zero-mean datum: the top slice shrinks as y_max grows
    const GridField pair = sample(fixtures::by_name("bump_pair", 1, {{"r0", 1.0}, {"shift", 2.5}}), 12.0, 256);
    double previous = pair.max_abs();
    for (double top : {5.0, 20.0, 80.0}) {
        const std::vector<double> nodes{1e-3, top};
        const double now = extend(pair, FracOrder(0.3), nodes).slice(1).max_abs();
        CHECK(now < previous);
        previous = now;
    }
    CHECK(previous < 1e-3 * pair.max_abs());
}

TEST_CASE("Dirichlet-to-Neumann constants") {
    const GridField u = gaussian_1d();
    const std::vector<double> y = log_y_nodes();
    CHECK(cs_neumann(FracOrder(0.3)) == doctest::Approx(oracle::kCsNeumann_03).epsilon(1e-13));
    CHECK(cs_quotient(FracOrder(0.7)) == doctest::Approx(oracle::kCsQuotient_07).epsilon(1e-13));
    for (double s : {0.3, 0.5, 0.7}) {
        const FracOrder fs(s);
        const ExtensionField e = extend(u, fs, y);
        const BoundaryLimit nl = neumann_limit(e);
        CHECK(nl.constant_ratio == doctest::Approx(cs_neumann(fs)).epsilon(1e-2));
        CHECK(max_diff(nl.measured.values(), nl.target.values()) < 1e-3 * nl.target.max_abs());
        const BoundaryLimit ql = quotient_limit(e);
        CHECK(ql.constant_ratio == doctest::Approx(cs_quotient(fs)).epsilon(1e-2));
        CHECK(max_diff(ql.measured.values(), ql.target.values()) < 1e-2 * ql.target.max_abs());
    }
}

TEST_CASE("boundary limits of the Poisson extension and of constants") {
    const GridField w = sample(fixtures::plane_wave(1, 1.0), kPi, 32);
    const ExtensionField e = extend(w, FracOrder(0.5), log_y_nodes());
    const BoundaryLimit nl = neumann_limit(e);
    const BoundaryLimit ql = quotient_limit(e);
    CHECK(cs_neumann(FracOrder(0.5)) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(std::abs(nl.measured[i] - w[i]) < 1e-6);
        CHECK(std::abs(ql.measured[i] - w[i]) < 1e-6);
    }
    const GridField one = GridField::constant(1, 4.0, 32, 2.0);
    const ExtensionField c = extend(one, FracOrder(0.4), log_y_nodes());
    CHECK(neumann_limit(c).measured.max_abs() < 1e-12);
    CHECK(neumann_limit(c).target.max_abs() == 0.0);
    CHECK(quotient_limit(c).measured.max_abs() < 1e-8);
}

TEST_CASE("extrapolation from nodes far from the boundary is rejected") {
    const GridField u = gaussian_1d();
    const std::vector<double> far{0.5, 1.0, 2.0};
    const ExtensionField e = extend(u, FracOrder(0.3), far);
    try {
        neumann_limit(e);
        FAIL("expected extrapolation divergence");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::extrapolation_divergence);
    }
    const std::vector<double> two{1e-3, 2e-3};
    CHECK_THROWS_AS(neumann_limit(extend(u, FracOrder(0.3), two)), Error);
}

TEST_CASE("Neumann extension for negative powers") {
    const std::vector<double> y = log_y_nodes();
    SUBCASE("plane wave, s = 1/2") {
        const GridField f = sample(fixtures::plane_wave(1, 2.0), kPi, 32);
        const std::vector<double> tiny{1e-9, 1e-8, 1e-7};
        const ExtensionField e = extend_neumann(f, FracOrder(0.5), tiny);
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(std::abs(e.value(0, i) - 0.5 * f[i]) < 1e-7);
        }
    }
    SUBCASE("gaussian: trace and flux") {
        const GridField f = gaussian_1d();
        for (double s : {0.3, 0.7}) {
            const FracOrder fs(s);
            const ExtensionField e = extend_neumann(f, fs, y);
            CHECK(e.kind() == ExtensionKind::neumann);
            const BoundaryLimit flux = neumann_limit(e);
            CHECK(flux.constant_ratio == doctest::Approx(1.0).epsilon(1e-2));
            CHECK(max_diff(flux.measured.values(), flux.target.values()) < 1e-2 * f.max_abs());

            const std::vector<double> tiny{1e-10};
            const ExtensionField low = extend_neumann(f, fs, tiny);
            const GridField potential = frac_inverse_spectral(f, s).field;
            const double scale = 1.0 / cs_neumann(fs);
            double worst = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                worst = std::max(worst, std::abs(low.value(0, i) - scale * potential[i]));
            }
            CHECK(worst < 1e-2 * scale * potential.max_abs());
        }
        CHECK_THROWS_AS(quotient_limit(extend_neumann(f, FracOrder(0.5), y)), Error);
    }
    SUBCASE("zero datum") {
        const GridField zero = GridField::constant(1, 4.0, 32, 0.0);
        const ExtensionField e = extend_neumann(zero, FracOrder(0.4), y);
        for (double v : e.values()) {
            CHECK(v == 0.0);
        }
    }
}

TEST_CASE("extension satisfies the degenerate elliptic equation") {
    const GridField u = gaussian_1d();
    for (double s : {0.3, 0.7}) {
        const double coarse = pde_residual(extend(u, FracOrder(s), log_y_nodes(48)));
        const double fine = pde_residual(extend(u, FracOrder(s), log_y_nodes(96)));
        CHECK(coarse < 1e-3);
        CHECK(fine < 0.25 * coarse);
    }
}

TEST_CASE("H^s seminorm: wavenumber sum against the double integral") {
    const GridField zero = GridField::constant(1, 4.0, 32, 0.0);
    const HsSeminorm z = hs_seminorm(zero, FracOrder(0.4));
    CHECK(z.spectral == 0.0);
    CHECK(z.gagliardo == 0.0);

    const GridField w = sample(fixtures::plane_wave(1, 1.0), kPi, 64);
    CHECK(hs_seminorm(w, FracOrder(0.3)).spectral == doctest::Approx(w.l2_norm_squared()).epsilon(1e-13));

    const GridField g = gaussian_1d();
    for (double s : {0.3, 0.5, 0.7}) {
        const HsSeminorm h = hs_seminorm(g, FracOrder(s));
        CHECK(h.gagliardo == doctest::Approx(h.spectral).epsilon(1e-2));
        CHECK(std::abs(h.gagliardo - h.spectral) <= h.tail_bound + 1e-3 * h.spectral);
    }
    // a wider box brings the periodic value to the one on R
    const GridField wide = sample(fixtures::gaussian(1, 1.0), 48.0, 1024);
    CHECK(hs_seminorm(wide, FracOrder(0.3)).spectral == doctest::Approx(oracle::kHsGauss_0p3).epsilon(1e-2));
    CHECK(hs_seminorm(wide, FracOrder(0.5)).spectral == doctest::Approx(oracle::kHsGauss_0p5).epsilon(1e-3));
    CHECK(hs_seminorm(wide, FracOrder(0.7)).spectral == doctest::Approx(oracle::kHsGauss_0p7).epsilon(1e-3));

    const GridField g2 = sample(fixtures::gaussian(2, 1.0), 8.0, 64);
    const HsSeminorm h2 = hs_seminorm(g2, FracOrder(0.5));
    CHECK(h2.gagliardo == doctest::Approx(h2.spectral).epsilon(1e-2));
}

TEST_CASE("extension energy equals the Neumann constant times the seminorm") {
    const std::vector<double> y = log_y_nodes();
    SUBCASE("gaussian") {
        const GridField u = gaussian_1d();
        for (double s : {0.3, 0.5, 0.7}) {
            const FracOrder fs(s);
            const ExtensionEnergy e = extension_energy(extend(u, fs, y));
            CHECK(e.value == doctest::Approx(cs_neumann(fs) * hs_seminorm(u, fs).spectral).epsilon(2e-2));
            CHECK_FALSE(e.y_grid_too_coarse);
        }
        const GridField u2 = sample(fixtures::gaussian(2, 1.0), 8.0, 32);
        const FracOrder fs(0.4);
        CHECK(extension_energy(extend(u2, fs, y)).value ==
              doctest::Approx(cs_neumann(fs) * hs_seminorm(u2, fs).spectral).epsilon(2e-2));
    }
    SUBCASE("plane wave at s = 1/2") {
        const GridField w = sample(fixtures::plane_wave(1, 1.0), kPi, 32);
        CHECK(extension_energy(extend(w, FracOrder(0.5), y)).value ==
              doctest::Approx(w.l2_norm_squared()).epsilon(2e-2));
        for (double s : {0.3, 0.7}) {
            CHECK(extension_energy(extend(w, FracOrder(s), y)).value ==
                  doctest::Approx(cs_neumann(FracOrder(s)) * w.l2_norm_squared()).epsilon(2e-2));
        }
    }
    SUBCASE("zero datum") {
        const GridField zero = GridField::constant(1, 4.0, 32, 0.0);
        CHECK(extension_energy(extend(zero, FracOrder(0.4), y)).value == 0.0);
    }
}

TEST_CASE("the extension minimizes the weighted energy") {
    const GridField u = gaussian_1d();
    const std::vector<double> y = log_y_nodes();
    const ExtensionField e = extend(u, FracOrder(0.4), y);
    const double base = extension_energy(e).value;
    for (double amplitude : {0.05, -0.05, 0.01}) {
        std::vector<double> v(e.values().begin(), e.values().end());
        for (std::size_t j = 0; j < y.size(); ++j) {
            const double ty = std::log(y[j] / 0.5);
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double x = u.point(i)[0] - 0.5;
                const double r2 = x * x + ty * ty;
                if (r2 < 1.0) {
                    v[j * u.size() + i] += amplitude * std::exp(-1.0 / (1.0 - r2));
                }
            }
        }
        CHECK(extension_energy(e.with_values(v)).value > base);
    }
}

TEST_CASE("extension files round-trip bitwise") {
    const GridField u = gaussian_1d();
    const ExtensionField e = extend(u, FracOrder(0.3), log_y_nodes(12));
    const auto path = scratch("roundtrip.fsgf");
    save_extension(e, path);
    const ExtensionField back = load_extension(path);
    CHECK(back.y_count() == e.y_count());
    CHECK(back.s().s() == 0.3);
    CHECK(back.kind() == ExtensionKind::dirichlet);
    CHECK(std::memcmp(back.values().data(), e.values().data(), 8 * e.values().size()) == 0);
    CHECK(std::memcmp(back.y_nodes().data(), e.y_nodes().data(), 8 * e.y_count()) == 0);
    CHECK(std::memcmp(back.boundary().values().data(), u.values().data(), 8 * u.size()) == 0);
    try {
        load_field(path);
        FAIL("a grid loader must refuse an extension file");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::header_mismatch);
    }
    const auto plain = scratch("plain.fsgf");
    save_field(u, plain);
    CHECK_THROWS_AS(load_extension(plain), Error);

    const ExtensionField n = extend_neumann(u, FracOrder(0.6), log_y_nodes(6));
    save_extension(n, path);
    CHECK(load_extension(path).kind() == ExtensionKind::neumann);
    std::filesystem::remove(path);
    std::filesystem::remove(plain);
}

TEST_CASE("y-node validation") {
    const GridField u = gaussian_1d();
    const std::vector<double> unsorted{1.0, 0.5};
    CHECK_THROWS_AS(extend(u, FracOrder(0.5), unsorted), Error);
    const std::vector<double> nonpositive{0.0, 1.0};
    CHECK_THROWS_AS(extend(u, FracOrder(0.5), nonpositive), Error);
    CHECK_THROWS_AS(log_y_nodes(1), Error);
    CHECK_THROWS_AS(extend(u, FracOrder(1.2), log_y_nodes()), Error);
}

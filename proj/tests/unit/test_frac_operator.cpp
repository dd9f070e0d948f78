#include <doctest.h>

#include "fracsem/fixtures.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/numerics.hpp"
#include "fracsem/spectral.hpp"
#include "oracle_values.hpp"

#include <cmath>
#include <random>

using namespace fracsem;

namespace {

double max_diff(const GridField& a, const GridField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double at1(const AnalyticField& f, double x) { return f.at(Point{x, 0.0, 0.0}); }

}  // namespace

TEST_CASE("spectral multiplier on plane waves and constants") {
    const GridField w1 = sample(fixtures::plane_wave(1, 1.0), kPi, 32);
    CHECK(max_diff(frac_apply_spectral(w1, FracOrder(0.5)), w1) < 1e-13);

    const GridField w2 = sample(fixtures::plane_wave(1, 2.0), kPi, 32);
    const GridField out = frac_apply_spectral(w2, FracOrder(0.5));
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i] == doctest::Approx(2.0 * w2[i]).epsilon(1e-12).scale(1.0));
    }

    const GridField c = GridField::constant(2, 3.0, 16, 4.5);
    CHECK(frac_apply_spectral(c, FracOrder(0.3)).max_abs() < 1e-13);
}

TEST_CASE("eigenfunction law on both grid routes") {
    for (int n : {1, 2}) {
        const GridField w = sample(fixtures::plane_wave(n, 3.0), kPi, 32);
        for (double s : {0.25, 0.5, 0.75}) {
            const double lam = std::pow(3.0, 2.0 * s);
            std::vector<double> expect(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) {
                expect[i] = lam * w[i];
            }
            const GridField ref = w.with_values(expect);
            CHECK(max_diff(frac_apply_spectral(w, FracOrder(s)), ref) < 1e-12);
            const GridRouteResult sg = frac_apply_semigroup(w, FracOrder(s));
            CHECK(max_diff(sg.field, ref) < 1e-6);
            CHECK(sg.quadrature_error < 1e-6);
        }
    }
}

TEST_CASE("composition of powers") {
    const GridField u = sample(fixtures::gaussian(1, 1.0), 12.0, 256);
    for (auto [s1, s2] : {std::pair{0.2, 0.3}, std::pair{0.25, 0.75}, std::pair{0.4, 0.45}}) {
        const GridField lhs = frac_apply_spectral(frac_apply_spectral(u, FracOrder(s1)), FracOrder(s2));
        CHECK(max_diff(lhs, frac_apply_spectral(u, FracOrder(s1 + s2))) < 1e-12);
    }
}

TEST_CASE("derivatives commute with the operator") {
    const GridField u = sample(fixtures::gaussian(2, 1.5), 8.0, 64);
    for (int axis : {0, 1}) {
        for (int order : {1, 2}) {
            const GridField a = frac_apply_spectral(spectral_derivative(u, axis, order), FracOrder(0.4));
            const GridField b = spectral_derivative(frac_apply_spectral(u, FracOrder(0.4)), axis, order);
            CHECK(max_diff(a, b) < 1e-10);
        }
    }
}

TEST_CASE("analytic semigroup route reproduces the gaussian image on R") {
    const AnalyticField g = fixtures::gaussian(1, 1.0);
    const struct {
        double s, x, want;
    } cases[] = {
        {0.25, 0.0, oracle::kGaussFrac_s0p25_x0},   {0.25, 1.3, oracle::kGaussFrac_s0p25_x1p3},
        {0.5, 0.0, oracle::kGaussFrac_s0p5_x0},     {0.5, 0.5, oracle::kGaussFrac_s0p5_x0p5},
        {0.75, 0.0, oracle::kGaussFrac_s0p75_x0},   {0.75, 1.3, oracle::kGaussFrac_s0p75_x1p3},
    };
    for (const auto& c : cases) {
        const std::array<double, 1> x{c.x};
        const PointValue v = frac_apply_semigroup(g, x, FracOrder(c.s));
        CHECK(v.value == doctest::Approx(c.want).epsilon(1e-6).scale(1.0));
        CHECK(v.error_estimate < 1e-6);
    }
}

TEST_CASE("analytic semigroup route on a plane wave") {
    const std::array<double, 1> x0{0.0};
    const PointValue v = frac_apply_semigroup(fixtures::plane_wave(1, 1.0), x0, FracOrder(0.5));
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kernel identity sweep") {
    for (int n = 1; n <= 3; ++n) {
        for (double s : {0.25, 0.5, 0.75}) {
            for (double r : {0.5, 1.0, 2.0}) {
                const KernelIdentity k = kernel_identity_check(n, FracOrder(s), r);
                CHECK(k.lhs / k.rhs == doctest::Approx(1.0).epsilon(1e-8));
                const KernelIdentity k2 = kernel_identity_check(n, FracOrder(s), 2.0 * r);
                CHECK(k2.rhs / k.rhs == doctest::Approx(std::pow(2.0, -(n + 2.0 * s))).epsilon(1e-14));
            }
        }
    }
    const KernelIdentity half = kernel_identity_check(1, FracOrder(0.5), 1.0);
    CHECK(half.rhs == doctest::Approx(1.0 / kPi).epsilon(1e-12));
    CHECK(half.lhs == doctest::Approx(oracle::kCns_1_half).epsilon(1e-10));
}

TEST_CASE("route agreement in 1D on the torus") {
    constexpr double L = 12.0;
    constexpr int M = 256;
    for (const AnalyticField& base : {fixtures::gaussian(1, 1.0), fixtures::bump(1, 4.0)}) {
        const AnalyticField per = fixtures::periodized(base, L);
        const GridField u = sample(base, L, M);
        for (double s : {0.25, 0.5, 0.75}) {
            const GridField spec = frac_apply_spectral(u, FracOrder(s));
            const GridField semi = frac_apply_semigroup(u, FracOrder(s)).field;
            for (int j : {96, 128, 140, 150, 160}) {
                const double x = u.coordinate(j);
                const std::array<double, 1> xs{x};
                const double a = spec[j];
                const double b = frac_apply_semigroup(per, xs, FracOrder(s)).value;
                const double c = frac_apply_pointwise(per, xs, FracOrder(s)).value;
                INFO(base.name, " s=", s, " x=", x);
                CHECK(std::abs(a - semi[j]) <= 1e-4);
                CHECK(std::abs(a - b) <= 1e-4);
                CHECK(std::abs(a - c) <= 1e-4);
                CHECK(std::abs(b - c) <= 1e-4);
            }
        }
    }
}

TEST_CASE("maximum principle at a zero of a nonnegative fixture") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> centre(-1.5, 1.5);
    std::uniform_real_distribution<double> width(0.6, 2.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    std::uniform_real_distribution<double> order(0.1, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = centre(rng);
        const AnalyticField dip = fixtures::combine(1.0, fixtures::constant(1, 1.0), -1.0,
                                                    fixtures::translate(fixtures::plane_wave(1, freq(rng)),
                                                                        Point{x0, 0.0, 0.0}));
        const AnalyticField u = fixtures::product(fixtures::gaussian(1, width(rng)), dip);
        CHECK(at1(u, x0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
        const std::array<double, 1> xs{x0};
        const double s = order(rng);
        CHECK(frac_apply_semigroup(u, xs, FracOrder(s)).value <= 1e-10);
    }
}

TEST_CASE("inadmissible growth is rejected") {
    AnalyticField grow = fixtures::constant(1, 1.0);
    grow.decay = Decay::tail_power(-2.0);
    const std::array<double, 1> x0{0.0};
    CHECK_THROWS_AS(frac_apply_semigroup(grow, x0, FracOrder(0.5)), Error);
    CHECK_THROWS_AS(frac_apply_spectral(GridField::constant(1, 1.0, 16, 1.0), FracOrder(1.5)), Error);
}

TEST_CASE("route validation") {
    FracRoute r;
    r.kind = FracRouteKind::pointwise_integral;
    r.eps = 0.1;
    r.R = 0.05;
    CHECK_THROWS_AS(r.validate(), Error);
    r.R = 10.0;
    CHECK_NOTHROW(r.validate());
}

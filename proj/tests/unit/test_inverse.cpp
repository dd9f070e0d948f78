#include <doctest.h>

#include "fracsem/fixtures.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/inverse.hpp"
#include "fracsem/numerics.hpp"
#include "oracle_values.hpp"

#include <cmath>

using namespace fracsem;

namespace {

double max_diff(const GridField& a, const GridField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

GridField minus_mean(const GridField& f) {
    const double m = f.mean();
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) {
        x -= m;
    }
    return f.with_values(v);
}

AnalyticField pair(int n, double r0 = 1.0, double shift = 2.5) {
    return fixtures::by_name("bump_pair", n, {{"r0", r0}, {"shift", shift}});
}

}  // namespace

TEST_CASE("inverse multiplier on a plane wave") {
    const GridField w = sample(fixtures::plane_wave(1, 2.0), kPi, 64);
    const InverseGridResult spec = frac_inverse_spectral(w, 0.5);
    const InverseGridResult semi = frac_inverse_semigroup(w, 0.5);
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(spec.field[i] == doctest::Approx(0.5 * w[i]).scale(1.0).epsilon(1e-13));
        CHECK(semi.field[i] == doctest::Approx(0.5 * w[i]).scale(1.0).epsilon(1e-8));
    }
}

TEST_CASE("round trip removes exactly the mean") {
    for (int n : {1, 2}) {
        const GridField f = sample(fixtures::bump(n, 1.5, Point{0.3, -0.2, 0.0}), 6.0, n == 1 ? 256 : 64);
        for (double s : {0.25, 0.5, 0.75}) {
            const InverseGridResult inv = frac_inverse_semigroup(f, s);
            CHECK(inv.removed_mean == doctest::Approx(f.mean()).epsilon(1e-14));
            CHECK(max_diff(frac_apply_spectral(inv.field, FracOrder(s)), minus_mean(f)) < 1e-8);
            const InverseGridResult sp = frac_inverse_spectral(f, s);
            CHECK(max_diff(frac_apply_spectral(sp.field, FracOrder(s)), minus_mean(f)) < 1e-12);
        }
    }
}

TEST_CASE("inverse of a bump is bounded and decays toward the box edge") {
    const GridField f = sample(fixtures::bump(1, 1.0), 16.0, 256);
    const InverseGridResult inv = frac_inverse_semigroup(f, 0.25);
    const double centre = std::abs(inv.field[128]);
    CHECK(inv.field.max_abs() <= 5.0 * f.max_abs());
    CHECK(std::abs(inv.field[0]) < centre);
    CHECK(std::abs(inv.field[32]) < centre);
}

TEST_CASE("Riesz kernel values") {
    const std::array<double, 3> one{1.0, 0.0, 0.0};
    CHECK(riesz_kernel(1, 0.5, one) == doctest::Approx(oracle::kRieszLog_1_at1).epsilon(1e-14));
    const std::array<double, 3> two{2.0, 0.0, 0.0};
    CHECK(riesz_kernel(3, 0.5, two) == doctest::Approx(oracle::kCnNegs_3_half * 0.25).epsilon(1e-14));
    const std::array<double, 3> zero_crossing{std::exp(-0.5 * oracle::kEulerGamma), 0.0, 0.0};
    CHECK(std::abs(riesz_kernel(1, 0.5, zero_crossing)) < 1e-15);
    const std::array<double, 3> origin{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(riesz_kernel(1, 0.3, origin), Error);
    // the Euler-Mascheroni constant as carried by the log kernel
    CHECK(-2.0 * kPi * riesz_kernel(1, 0.5, one) == doctest::Approx(0.5772156649).epsilon(1e-9));
    CHECK(kEulerGamma == doctest::Approx(oracle::kEulerGammaQuad).epsilon(1e-15));
}

TEST_CASE("Riesz convolution matches the semigroup route") {
    SUBCASE("log kernel, n = 1, s = 1/2, zero-mean pair") {
        const AnalyticField f = pair(1);
        for (double x : {-1.25, 0.0, 0.7, 3.0}) {
            const std::array<double, 1> xs{x};
            const PointValue a = riesz_convolve(f, xs, 0.5);
            const PointValue b = frac_inverse_semigroup(f, xs, 0.5);
            CHECK(a.value == doctest::Approx(b.value).scale(1.0).epsilon(1e-4));
        }
    }
    SUBCASE("power kernel, n = 1, s = 0.25 and 0.4") {
        const AnalyticField f = fixtures::bump(1, 1.0);
        for (double s : {0.25, 0.4}) {
            for (double x : {0.0, 0.6, 2.0}) {
                const std::array<double, 1> xs{x};
                CHECK(riesz_convolve(f, xs, s).value ==
                      doctest::Approx(frac_inverse_semigroup(f, xs, s).value).scale(1.0).epsilon(1e-4));
            }
        }
    }
    SUBCASE("n = 3, s = 1/2") {
        const AnalyticField f = fixtures::bump(3, 1.0);
        const std::array<double, 3> x{0.2, 0.1, -0.3};
        CHECK(riesz_convolve(f, x, 0.5).value ==
              doctest::Approx(frac_inverse_semigroup(f, x, 0.5).value).scale(1.0).epsilon(1e-4));
    }
    SUBCASE("n = 2, s = 1/2") {
        const AnalyticField f = fixtures::bump(2, 2.0);
        const std::array<double, 2> x{0.4, 0.3};
        CHECK(riesz_convolve(f, x, 0.5).value ==
              doctest::Approx(frac_inverse_semigroup(f, x, 0.5).value).scale(1.0).epsilon(1e-4));
    }
}

TEST_CASE("log case needs zero mean; divergent tails are reported") {
    const std::array<double, 1> x{0.0};
    const AnalyticField f = fixtures::bump(1, 1.0);
    try {
        riesz_convolve(f, x, 0.5);
        FAIL("expected a zero-mean violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::zero_mean_violation);
    }
    try {
        frac_inverse_semigroup(f, x, 0.5);
        FAIL("expected divergence");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::divergence);
    }
    CHECK_THROWS_AS(riesz_convolve(f, x, 0.7), Error);
}

TEST_CASE("mass of fixtures") {
    CHECK(field_mass(fixtures::gaussian(1, 1.0)) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
    CHECK(std::abs(field_mass(pair(1))) < 1e-12);
    CHECK(field_mass(fixtures::gaussian(2, 1.0)) == doctest::Approx(kPi).epsilon(1e-13));
}

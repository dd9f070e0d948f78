#pragma once

#include "fracsem/error.hpp"

namespace fracsem {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Fractional exponent s > 0 together with the extension weight a = 1 - 2s.
class FracOrder {
public:
    explicit FracOrder(double s);

    [[nodiscard]] double s() const noexcept { return s_; }
    [[nodiscard]] double a() const noexcept { return a_; }

    /// Throws Error(domain) unless 0 < s < 1.
    void require_operator_range() const;

private:
    double s_;
    double a_;
};

/// Gamma function. Throws Error(pole) at 0, -1, -2, ...
double gamma(double x);

/// Normalizing constant of the singular-integral form of (-Delta)^s, 0 < s < 1.
double c_ns(int n, FracOrder s);

/// Same constant through the Gamma(2 - s) expression. Used as a cross-check.
double c_ns_alt(int n, FracOrder s);

/// Riesz potential constant Gamma(n/2 - s) / (4^s Gamma(s) pi^{n/2}), 0 < s < n/2.
double c_n_negs(int n, double s);

/// Surface area of the unit sphere S^{n-1}.
double sphere_area(int n);

/// Gamma(1 - s) / (4^{s - 1/2} Gamma(s)): weighted Neumann trace constant.
double cs_neumann(FracOrder s);

/// Gamma(1 - s) / (4^s Gamma(1 + s)): boundary quotient constant.
double cs_quotient(FracOrder s);

struct SemigroupConstants {
    double c_pos = 0.0;
    double c_neg = 0.0;  ///< zero when s >= n/2
    double cs_neumann = 0.0;
    double cs_quotient = 0.0;
    double euler_gamma = kEulerGamma;

    static SemigroupConstants compute(int n, FracOrder s);
};

void require_dimension(int n);

}  // namespace fracsem

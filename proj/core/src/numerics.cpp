#include "fracsem/numerics.hpp"

#include <cmath>
#include <string>

namespace fracsem {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::domain: return "domain error";
        case ErrorCode::pole: return "pole";
        case ErrorCode::non_convergence: return "non-convergence";
        case ErrorCode::tail_bound: return "tail-bound failure";
        case ErrorCode::remainder_too_large: return "remainder estimate too large";
        case ErrorCode::zero_mean_violation: return "zero-mean violation";
        case ErrorCode::divergence: return "divergence";
        case ErrorCode::io: return "I/O error";
        case ErrorCode::header_mismatch: return "header mismatch";
        case ErrorCode::validation: return "validation error";
        case ErrorCode::extrapolation_divergence: return "extrapolation divergence";
        case ErrorCode::fit_residual: return "fit residual too large";
        case ErrorCode::unsupported: return "unsupported";
        case ErrorCode::config: return "config error";
    }
    return "error";
}

FracOrder::FracOrder(double s) : s_(s), a_(1.0 - 2.0 * s) {
    if (!std::isfinite(s) || s <= 0.0) {
        throw Error(ErrorCode::domain, "fractional order must satisfy s > 0, got " + std::to_string(s));
    }
}

void FracOrder::require_operator_range() const {
    if (s_ >= 1.0) {
        throw Error(ErrorCode::domain, "operator requires 0 < s < 1, got " + std::to_string(s_));
    }
}

void require_dimension(int n) {
    if (n < 1 || n > 3) {
        throw Error(ErrorCode::domain, "dimension must be 1, 2 or 3, got " + std::to_string(n));
    }
}

double gamma(double x) {
    if (!std::isfinite(x)) {
        throw Error(ErrorCode::domain, "gamma of a non-finite argument");
    }
    if (x <= 0.0 && x == std::nearbyint(x)) {
        throw Error(ErrorCode::pole, "gamma has a pole at " + std::to_string(x));
    }
    return std::tgamma(x);
}

double c_ns(int n, FracOrder s) {
    require_dimension(n);
    s.require_operator_range();
    const double sv = s.s();
    return std::pow(4.0, sv) * gamma(0.5 * n + sv) /
           (std::abs(gamma(-sv)) * std::pow(kPi, 0.5 * n));
}

double c_ns_alt(int n, FracOrder s) {
    require_dimension(n);
    s.require_operator_range();
    const double sv = s.s();
    return sv * (1.0 - sv) * std::pow(4.0, sv) * gamma(0.5 * n + sv) /
           (std::abs(gamma(2.0 - sv)) * std::pow(kPi, 0.5 * n));
}

double c_n_negs(int n, double s) {
    require_dimension(n);
    if (!(s > 0.0) || !(s < 0.5 * n)) {
        throw Error(ErrorCode::domain,
                    "Riesz constant needs 0 < s < n/2 (s = n/2 is the logarithmic kernel)");
    }
    return gamma(0.5 * n - s) / (std::pow(4.0, s) * gamma(s) * std::pow(kPi, 0.5 * n));
}

double sphere_area(int n) {
    require_dimension(n);
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma(0.5 * n);
}

double cs_neumann(FracOrder s) {
    s.require_operator_range();
    return gamma(1.0 - s.s()) / (std::pow(4.0, s.s() - 0.5) * gamma(s.s()));
}

double cs_quotient(FracOrder s) {
    s.require_operator_range();
    return gamma(1.0 - s.s()) / (std::pow(4.0, s.s()) * gamma(1.0 + s.s()));
}

SemigroupConstants SemigroupConstants::compute(int n, FracOrder s) {
    SemigroupConstants k;
    k.c_pos = c_ns(n, s);
    if (s.s() < 0.5 * n) {
        k.c_neg = c_n_negs(n, s.s());
    }
    k.cs_neumann = fracsem::cs_neumann(s);
    k.cs_quotient = fracsem::cs_quotient(s);
    return k;
}

}  // namespace fracsem

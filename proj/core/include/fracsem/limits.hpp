#pragma once

#include "fracsem/field.hpp"
#include "fracsem/quadrature.hpp"

#include <span>
#include <vector>

namespace fracsem {

enum class LimitDirection { s_to_1, s_to_0 };

enum class LimitRoute {
    semigroup,    ///< heat-kernel quadrature of the semigroup formula
    closed_form,  ///< the fixture's known image, when it has one
};

struct LimitRow {
    double s = 0.0;
    double value = 0.0;
    double target = 0.0;
    double gap = 0.0;
};

struct LimitTable {
    std::vector<LimitRow> rows;
    /// Gaps strictly decrease along the sequence (ties at exactly zero allowed).
    bool monotone = false;
};

/// Values of (-Delta)^s u(x) along s_sequence against -Delta u(x) (s_to_1) or
/// u(x) (s_to_0). The sequence must be monotone toward the endpoint and stay
/// at least 1e-3 away from it.
LimitTable limit_diagnostics(const AnalyticField& u, std::span<const double> x, LimitDirection direction,
                             std::span<const double> s_sequence, LimitRoute route = LimitRoute::semigroup,
                             const QuadratureSpec& spec = {});

}  // namespace fracsem

#include "fracsem/limits.hpp"

#include "fracsem/error.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/numerics.hpp"

#include <cmath>

namespace fracsem {

LimitTable limit_diagnostics(const AnalyticField& u, std::span<const double> x, LimitDirection direction,
                             std::span<const double> s_sequence, LimitRoute route, const QuadratureSpec& spec) {
    if (s_sequence.empty()) {
        throw Error(ErrorCode::validation, "limit sweep needs at least one s");
    }
    const double endpoint = direction == LimitDirection::s_to_1 ? 1.0 : 0.0;
    for (std::size_t i = 0; i < s_sequence.size(); ++i) {
        const double s = s_sequence[i];
        if (!(s > 0.0 && s < 1.0) || std::abs(s - endpoint) < 1e-3 * (1.0 - 1e-12)) {
            throw Error(ErrorCode::domain, "limit sweep must stay inside (0, 1) and 1e-3 away from the endpoint");
        }
        if (i > 0 && !(std::abs(s - endpoint) < std::abs(s_sequence[i - 1] - endpoint))) {
            throw Error(ErrorCode::validation, "limit sweep must move monotonically toward the endpoint");
        }
    }
    double target = 0.0;
    if (direction == LimitDirection::s_to_1) {
        if (!u.laplacian) {
            throw Error(ErrorCode::unsupported, "s -> 1 target needs the fixture's Laplacian");
        }
        target = -(*u.laplacian)(x);
    } else {
        target = u(x);
    }

    LimitTable table;
    for (double s : s_sequence) {
        LimitRow row;
        row.s = s;
        if (route == LimitRoute::closed_form) {
            if (!u.exact_frac_image) {
                throw Error(ErrorCode::unsupported, "fixture '" + u.name + "' has no closed-form image");
            }
            row.value = (*u.exact_frac_image)(s, x);
        } else {
            row.value = frac_apply_semigroup(u, x, FracOrder(s), spec).value;
        }
        row.target = target;
        row.gap = std::abs(row.value - target);
        table.rows.push_back(row);
    }
    table.monotone = true;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const double prev = table.rows[i - 1].gap;
        const double cur = table.rows[i].gap;
        if (!(cur < prev || (cur == 0.0 && prev == 0.0))) {
            table.monotone = false;
        }
    }
    return table;
}

}  // namespace fracsem

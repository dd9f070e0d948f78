#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fracsem::detail {

// Finite-difference weights for derivatives 0..order at z from arbitrary
// nodes (Fornberg's recursion). Result is indexed [node][derivative].
inline std::vector<std::vector<double>> fd_weights(std::span<const double> x, double z, int order) {
    const std::size_t np = x.size();
    std::vector<std::vector<double>> c(np, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < np; ++i) {
        const int mn = std::min<int>(int(i), order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return c;
}

// First index of the five-point stencil used at node j of a grid of `count`.
inline std::size_t stencil_start(std::size_t j, std::size_t count) {
    if (j < 2) {
        return 0;
    }
    return std::min(j - 2, count - 5);
}

inline std::vector<double> log_nodes(std::span<const double> y) {
    std::vector<double> tau(y.size());
    std::transform(y.begin(), y.end(), tau.begin(), [](double v) { return std::log(v); });
    return tau;
}

}  // namespace fracsem::detail

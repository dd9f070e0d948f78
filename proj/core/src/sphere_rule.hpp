#pragma once

#include "fracsem/field.hpp"
#include "fracsem/numerics.hpp"
#include "fracsem/quadrature.hpp"

#include <cmath>
#include <vector>

namespace fracsem::detail {

// Directions on S^{n-1} with weights summing to |S^{n-1}|. Every rule is
// symmetric under w -> -w. For n = 3, azimuthal / 2 Gauss nodes in cos(theta).
struct SphereRule {
    std::vector<Point> dirs;
    std::vector<double> weights;
};

inline SphereRule sphere_rule(int n, int azimuthal) {
    SphereRule rule;
    if (n == 1) {
        rule.dirs = {Point{1.0, 0.0, 0.0}, Point{-1.0, 0.0, 0.0}};
        rule.weights = {1.0, 1.0};
        return rule;
    }
    if (n == 2) {
        for (int j = 0; j < azimuthal; ++j) {
            const double th = 2.0 * kPi * (j + 0.5) / azimuthal;
            rule.dirs.push_back(Point{std::cos(th), std::sin(th), 0.0});
            rule.weights.push_back(2.0 * kPi / azimuthal);
        }
        return rule;
    }
    const auto& gl = gauss_legendre(azimuthal / 2);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double mu = gl.nodes[i];
        const double sn = std::sqrt(1.0 - mu * mu);
        for (int j = 0; j < azimuthal; ++j) {
            const double ph = 2.0 * kPi * (j + 0.5) / azimuthal;
            rule.dirs.push_back(Point{sn * std::cos(ph), sn * std::sin(ph), mu});
            rule.weights.push_back(gl.weights[i] * 2.0 * kPi / azimuthal);
        }
    }
    return rule;
}

}  // namespace fracsem::detail

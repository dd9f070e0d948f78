#pragma once

#include "fracsem/field.hpp"

#include <map>
#include <string>

namespace fracsem::fixtures {

/// exp(-|x|^2 / sigma^2).
AnalyticField gaussian(int n, double sigma = 1.0);
/// cos(k x_1).
AnalyticField plane_wave(int n, double k = 1.0);
/// exp(1 - 1/(1 - |x - c|^2 / r0^2)) inside the ball, 0 outside; value 1 at the center.
AnalyticField bump(int n, double r0 = 1.0, Point center = {0.0, 0.0, 0.0});
/// (1 + |x|^2)^{-(n+1)/2}.
AnalyticField witch(int n);
/// |x|^alpha * bump(r0).
AnalyticField abs_power_bump(int n, double alpha, double r0 = 1.0);
AnalyticField constant(int n, double value);

/// |sin x_1|^alpha: Holder exponent alpha at the zeros of sin.
AnalyticField abs_sin_power(int n, double alpha);
/// sum_{j < terms} 2^{-alpha j} cos(2^j x_1), a truncated lacunary series.
AnalyticField lacunary(int n, double alpha, int terms);
/// tanh(x_1 / width) * bump(r0): bounded, with a sharp but resolved jump.
AnalyticField smoothed_sign_bump(int n, double width, double r0);

/// a f + b g.
AnalyticField combine(double a, const AnalyticField& f, double b, const AnalyticField& g);
/// f g.
AnalyticField product(const AnalyticField& f, const AnalyticField& g);
/// f(x - shift).
AnalyticField translate(const AnalyticField& f, Point shift);
/// Sum over images f(x + 2 L m), m in Z^n: the 2L-periodic field whose grid
/// samples on [-L, L)^n match the spectral routes' torus.
AnalyticField periodized(const AnalyticField& f, double half_width);

/// Builtin fixture by name with numeric parameters, as used by the CLI.
/// Names: gaussian(sigma), plane_wave(k), bump(r0), witch, abs_power_bump(alpha, r0),
/// constant(value), abs_sin_power(alpha), lacunary(alpha, terms),
/// smoothed_sign_bump(width, r0), bump_pair(r0, shift).
AnalyticField by_name(const std::string& name, int n, const std::map<std::string, double>& params);

/// Confluent hypergeometric 1F1(a; b; -z) for z >= 0, via Kummer's transformation.
double kummer_m_negative(double a, double b, double z);

}  // namespace fracsem::fixtures

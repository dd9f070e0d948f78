#include "fracsem/fixtures.hpp"

#include "fracsem/error.hpp"
#include "fracsem/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace fracsem::fixtures {

namespace {

double norm2(std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) {
        r2 += v * v;
    }
    return r2;
}

// sup over r in (0, r_max] of max(|p''|, |p'/r|) for a radial profile, by
// central differences.
double radial_hessian_bound(const std::function<double(double)>& p, double r_max) {
    constexpr int kSamples = 4000;
    const double d = r_max * 1e-4;
    double bound = 0.0;
    for (int i = 1; i <= kSamples; ++i) {
        const double r = r_max * i / kSamples;
        const double pp = (p(r + d) - 2.0 * p(r) + p(std::abs(r - d))) / (d * d);
        const double p1 = (p(r + d) - p(std::abs(r - d))) / (2.0 * d);
        bound = std::max({bound, std::abs(pp), std::abs(p1 / r)});
    }
    return bound;
}

AnalyticField base(std::string name, int n) {
    require_dimension(n);
    AnalyticField f;
    f.name = std::move(name);
    f.n = n;
    return f;
}

}  // namespace

double kummer_m_negative(double a, double b, double z) {
    if (z < 0.0) {
        throw Error(ErrorCode::domain, "kummer_m_negative expects z >= 0");
    }
    if (z <= 60.0) {
        // 1F1(a; b; -z) = e^{-z} 1F1(b - a; b; z); the transformed series has
        // terms of one sign after the first when b - a is in (-1, 0].
        const double c = b - a;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 0; k < 2000; ++k) {
            term *= (c + k) / (b + k) * z / (k + 1);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum) && k > z) {
                break;
            }
        }
        return std::exp(-z) * sum;
    }
    // large z: Gamma(b)/Gamma(b - a) z^{-a} sum_k (a)_k (1 + a - b)_k / k! z^{-k},
    // truncated at the smallest term
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double next = term * (a + k) * (1.0 + a - b + k) / ((k + 1) * z);
        if (std::abs(next) >= std::abs(term)) {
            break;
        }
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return gamma(b) / gamma(b - a) * std::pow(z, -a) * sum;
}

AnalyticField gaussian(int n, double sigma) {
    if (!(sigma > 0.0)) {
        throw Error(ErrorCode::validation, "gaussian width must be positive");
    }
    AnalyticField f = base("gaussian", n);
    const double s2 = sigma * sigma;
    f.eval = [s2](std::span<const double> x) { return std::exp(-norm2(x) / s2); };
    f.radial_profile = [s2](double r) { return std::exp(-r * r / s2); };
    f.decay = Decay::schwartz();
    f.fourier = [n, s2](std::span<const double> xi) {
        return std::pow(kPi * s2, 0.5 * n) * std::exp(-0.25 * s2 * norm2(xi));
    };
    f.exact_frac_image = [n, sigma, s2](double s, std::span<const double> x) {
        const double z = norm2(x) / s2;
        return std::pow(4.0, s) * gamma(0.5 * n + s) / gamma(0.5 * n) * std::pow(sigma, -2.0 * s) *
               kummer_m_negative(0.5 * n + s, 0.5 * n, z);
    };
    f.gradient = [s2](std::span<const double> x, std::span<double> g) {
        const double u = std::exp(-norm2(x) / s2);
        for (std::size_t a = 0; a < x.size(); ++a) {
            g[a] = -2.0 * x[a] / s2 * u;
        }
    };
    f.laplacian = [n, s2](std::span<const double> x) {
        const double r2 = norm2(x);
        return std::exp(-r2 / s2) * (4.0 * r2 / (s2 * s2) - 2.0 * n / s2);
    };
    f.support_radius = 6.5 * sigma;
    f.feature_scale = sigma;
    f.sup_norm = 1.0;
    f.hessian_bound = 2.0 / s2;
    return f;
}

AnalyticField plane_wave(int n, double k) {
    if (!(k > 0.0)) {
        throw Error(ErrorCode::validation, "plane wave number must be positive");
    }
    AnalyticField f = base("plane_wave", n);
    f.eval = [k](std::span<const double> x) { return std::cos(k * x[0]); };
    f.decay = Decay::bounded();
    f.exact_frac_image = [k](double s, std::span<const double> x) {
        return std::pow(k, 2.0 * s) * std::cos(k * x[0]);
    };
    f.gradient = [k](std::span<const double> x, std::span<double> g) {
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = -k * std::sin(k * x[0]);
    };
    f.laplacian = [k](std::span<const double> x) { return -k * k * std::cos(k * x[0]); };
    f.feature_scale = 1.0 / k;
    f.sup_norm = 1.0;
    f.hessian_bound = k * k;
    f.period = 2.0 * kPi / k;
    return f;
}

AnalyticField bump(int n, double r0, Point center) {
    if (!(r0 > 0.0)) {
        throw Error(ErrorCode::validation, "bump radius must be positive");
    }
    AnalyticField f = base("bump", n);
    const double r02 = r0 * r0;
    auto profile = [r02](double r) {
        const double q = r * r / r02;
        return q < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - q)) : 0.0;
    };
    auto shifted = [n, center](std::span<const double> x) {
        Point y{0.0, 0.0, 0.0};
        for (int a = 0; a < n; ++a) {
            y[a] = x[a] - center[a];
        }
        return y;
    };
    f.eval = [=](std::span<const double> x) {
        const Point y = shifted(x);
        return profile(std::sqrt(norm2(std::span<const double>(y.data(), n))));
    };
    const bool centered = center == Point{0.0, 0.0, 0.0};
    if (centered) {
        f.radial_profile = profile;
    }
    f.decay = Decay::schwartz();
    f.gradient = [=](std::span<const double> x, std::span<double> g) {
        const Point y = shifted(x);
        const double q = norm2(std::span<const double>(y.data(), n)) / r02;
        std::fill(g.begin(), g.end(), 0.0);
        if (q >= 1.0) {
            return;
        }
        const double w = 1.0 / (1.0 - q);
        const double u = std::exp(1.0 - w);
        for (int a = 0; a < n; ++a) {
            g[a] = -u * w * w * 2.0 * y[a] / r02;
        }
    };
    f.laplacian = [=](std::span<const double> x) {
        const Point y = shifted(x);
        const double q = norm2(std::span<const double>(y.data(), n)) / r02;
        if (q >= 1.0) {
            return 0.0;
        }
        const double w = 1.0 / (1.0 - q);
        const double u = std::exp(1.0 - w);
        const double g2 = 4.0 * q / r02;  // |grad q|^2
        return u * (std::pow(w, 4) * g2 - 2.0 * std::pow(w, 3) * g2 - 2.0 * n * w * w / r02);
    };
    double reach = 0.0;
    for (int a = 0; a < n; ++a) {
        reach = std::max(reach, std::abs(center[a]));
    }
    f.support_radius = reach + r0;
    f.feature_scale = r0 / 16.0;
    f.sup_norm = 1.0;
    f.hessian_bound = radial_hessian_bound(profile, r0);
    return f;
}

AnalyticField witch(int n) {
    AnalyticField f = base("witch", n);
    const double m = 0.5 * (n + 1);
    f.eval = [m](std::span<const double> x) { return std::pow(1.0 + norm2(x), -m); };
    f.radial_profile = [m](double r) { return std::pow(1.0 + r * r, -m); };
    f.decay = Decay::tail_power(n + 1.0);
    // Fourier transform of the Poisson kernel normalization
    const double cn = gamma(m) / std::pow(kPi, m);
    f.fourier = [cn](std::span<const double> xi) { return std::exp(-std::sqrt(norm2(xi))) / cn; };
    if (n == 1) {
        f.exact_frac_image = [](double s, std::span<const double> x) {
            const double t = x[0];
            return gamma(2.0 * s + 1.0) * std::cos((2.0 * s + 1.0) * std::atan(t)) /
                   std::pow(1.0 + t * t, s + 0.5);
        };
    }
    f.gradient = [m](std::span<const double> x, std::span<double> g) {
        const double w = std::pow(1.0 + norm2(x), -m - 1.0);
        for (std::size_t a = 0; a < x.size(); ++a) {
            g[a] = -2.0 * m * x[a] * w;
        }
    };
    f.laplacian = [n, m](std::span<const double> x) {
        const double r2 = norm2(x);
        return -2.0 * m * n * std::pow(1.0 + r2, -m - 1.0) +
               4.0 * m * (m + 1.0) * r2 * std::pow(1.0 + r2, -m - 2.0);
    };
    f.feature_scale = 0.5;
    f.sup_norm = 1.0;
    f.hessian_bound = radial_hessian_bound(*f.radial_profile, 10.0);
    return f;
}

AnalyticField abs_power_bump(int n, double alpha, double r0) {
    if (!(alpha > 0.0)) {
        throw Error(ErrorCode::validation, "abs_power exponent must be positive");
    }
    AnalyticField b = bump(n, r0);
    AnalyticField f = base("abs_power_bump", n);
    auto profile = [alpha, p = *b.radial_profile](double r) { return std::pow(r, alpha) * p(r); };
    f.eval = [profile](std::span<const double> x) { return profile(std::sqrt(norm2(x))); };
    f.radial_profile = profile;
    f.decay = Decay::schwartz();
    f.support_radius = r0;
    f.feature_scale = r0 / 16.0;
    f.sup_norm = 1.0;
    return f;
}

AnalyticField constant(int n, double value) {
    AnalyticField f = base("constant", n);
    f.eval = [value](std::span<const double>) { return value; };
    f.radial_profile = [value](double) { return value; };
    f.decay = Decay::bounded();
    f.exact_frac_image = [](double, std::span<const double>) { return 0.0; };
    f.gradient = [](std::span<const double>, std::span<double> g) { std::fill(g.begin(), g.end(), 0.0); };
    f.laplacian = [](std::span<const double>) { return 0.0; };
    f.sup_norm = std::abs(value);
    f.hessian_bound = 0.0;
    f.mean_at_infinity = value;
    f.feature_scale = 1.0;
    return f;
}

AnalyticField abs_sin_power(int n, double alpha) {
    if (!(alpha > 0.0)) {
        throw Error(ErrorCode::validation, "abs_sin_power exponent must be positive");
    }
    AnalyticField f = base("abs_sin_power", n);
    f.eval = [alpha](std::span<const double> x) { return std::pow(std::abs(std::sin(x[0])), alpha); };
    f.decay = Decay::bounded();
    f.sup_norm = 1.0;
    f.feature_scale = 0.05;
    f.period = kPi;
    return f;
}

AnalyticField lacunary(int n, double alpha, int terms) {
    if (!(alpha > 0.0) || terms < 1 || terms > 30) {
        throw Error(ErrorCode::validation, "lacunary needs alpha > 0 and 1 <= terms <= 30");
    }
    AnalyticField f = base("lacunary", n);
    f.eval = [alpha, terms](std::span<const double> x) {
        double acc = 0.0;
        double freq = 1.0;
        for (int j = 0; j < terms; ++j) {
            acc += std::pow(freq, -alpha) * std::cos(freq * x[0]);
            freq *= 2.0;
        }
        return acc;
    };
    f.exact_frac_image = [alpha, terms](double s, std::span<const double> x) {
        double acc = 0.0;
        double freq = 1.0;
        for (int j = 0; j < terms; ++j) {
            acc += std::pow(freq, 2.0 * s - alpha) * std::cos(freq * x[0]);
            freq *= 2.0;
        }
        return acc;
    };
    f.decay = Decay::bounded();
    f.sup_norm = 1.0 / (1.0 - std::pow(2.0, -alpha));
    f.feature_scale = std::ldexp(1.0, -(terms - 1));
    f.period = 2.0 * kPi;
    return f;
}

AnalyticField smoothed_sign_bump(int n, double width, double r0) {
    if (!(width > 0.0)) {
        throw Error(ErrorCode::validation, "smoothed_sign_bump width must be positive");
    }
    AnalyticField b = bump(n, r0);
    AnalyticField f = base("smoothed_sign_bump", n);
    f.eval = [width, be = b.eval](std::span<const double> x) { return std::tanh(x[0] / width) * be(x); };
    f.decay = Decay::schwartz();
    f.support_radius = r0;
    f.feature_scale = std::min(width, r0 / 16.0);
    f.sup_norm = 1.0;
    return f;
}

AnalyticField combine(double a, const AnalyticField& f, double b, const AnalyticField& g) {
    if (f.n != g.n) {
        throw Error(ErrorCode::validation, "combine needs fields of equal dimension");
    }
    AnalyticField h = base(f.name + "+" + g.name, f.n);
    h.eval = [a, b, fe = f.eval, ge = g.eval](std::span<const double> x) { return a * fe(x) + b * ge(x); };
    h.decay = f.decay.effective_power() <= g.decay.effective_power() ? f.decay : g.decay;
    if (f.fourier && g.fourier) {
        h.fourier = [a, b, ff = *f.fourier, gf = *g.fourier](std::span<const double> xi) {
            return a * ff(xi) + b * gf(xi);
        };
    }
    if (f.exact_frac_image && g.exact_frac_image) {
        h.exact_frac_image = [a, b, ff = *f.exact_frac_image, gf = *g.exact_frac_image](
                                 double s, std::span<const double> x) { return a * ff(s, x) + b * gf(s, x); };
    }
    if (f.gradient && g.gradient) {
        h.gradient = [a, b, fg = *f.gradient, gg = *g.gradient](std::span<const double> x, std::span<double> out) {
            std::array<double, 3> tmp{};
            fg(x, out);
            gg(x, std::span<double>(tmp.data(), out.size()));
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] = a * out[i] + b * tmp[i];
            }
        };
    }
    if (f.laplacian && g.laplacian) {
        h.laplacian = [a, b, fl = *f.laplacian, gl = *g.laplacian](std::span<const double> x) {
            return a * fl(x) + b * gl(x);
        };
    }
    if (f.radial_profile && g.radial_profile) {
        h.radial_profile = [a, b, fp = *f.radial_profile, gp = *g.radial_profile](double r) {
            return a * fp(r) + b * gp(r);
        };
    }
    h.support_radius = std::max(f.support_radius, g.support_radius);
    h.feature_scale = std::min(f.feature_scale, g.feature_scale);
    h.sup_norm = std::abs(a) * f.sup_norm + std::abs(b) * g.sup_norm;
    h.hessian_bound = std::abs(a) * f.hessian_bound + std::abs(b) * g.hessian_bound;
    h.mean_at_infinity = a * f.mean_at_infinity + b * g.mean_at_infinity;
    if (f.period && g.period && *f.period == *g.period) {
        h.period = f.period;
    }
    return h;
}

AnalyticField product(const AnalyticField& f, const AnalyticField& g) {
    if (f.n != g.n) {
        throw Error(ErrorCode::validation, "product needs fields of equal dimension");
    }
    AnalyticField h = base(f.name + "*" + g.name, f.n);
    h.eval = [fe = f.eval, ge = g.eval](std::span<const double> x) { return fe(x) * ge(x); };
    h.decay = f.decay.effective_power() >= g.decay.effective_power() ? f.decay : g.decay;
    if (f.decay.kind == Decay::Kind::tail_power && g.decay.kind == Decay::Kind::tail_power) {
        h.decay = Decay::tail_power(f.decay.power + g.decay.power);
    }
    if (f.gradient && g.gradient) {
        h.gradient = [fe = f.eval, ge = g.eval, fg = *f.gradient, gg = *g.gradient](std::span<const double> x,
                                                                                   std::span<double> out) {
            std::array<double, 3> tmp{};
            fg(x, out);
            gg(x, std::span<double>(tmp.data(), out.size()));
            const double fv = fe(x);
            const double gv = ge(x);
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] = out[i] * gv + fv * tmp[i];
            }
        };
        if (f.laplacian && g.laplacian) {
            h.laplacian = [fe = f.eval, ge = g.eval, fg = *f.gradient, gg = *g.gradient, fl = *f.laplacian,
                           gl = *g.laplacian](std::span<const double> x) {
                std::array<double, 3> a{};
                std::array<double, 3> b{};
                fg(x, std::span<double>(a.data(), x.size()));
                gg(x, std::span<double>(b.data(), x.size()));
                double dot = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    dot += a[i] * b[i];
                }
                return fl(x) * ge(x) + fe(x) * gl(x) + 2.0 * dot;
            };
        }
    }
    h.support_radius = std::min(f.support_radius, g.support_radius);
    h.feature_scale = std::min(f.feature_scale, g.feature_scale);
    h.sup_norm = f.sup_norm * g.sup_norm;
    return h;
}

AnalyticField translate(const AnalyticField& f, Point shift) {
    AnalyticField h = f;
    h.name = f.name + "@shift";
    const int n = f.n;
    auto moved = [n, shift](std::span<const double> x) {
        Point y{0.0, 0.0, 0.0};
        for (int a = 0; a < n; ++a) {
            y[a] = x[a] - shift[a];
        }
        return y;
    };
    h.eval = [n, moved, fe = f.eval](std::span<const double> x) {
        const Point y = moved(x);
        return fe(std::span<const double>(y.data(), n));
    };
    h.fourier.reset();
    h.radial_profile.reset();
    if (f.exact_frac_image) {
        h.exact_frac_image = [n, moved, fi = *f.exact_frac_image](double s, std::span<const double> x) {
            const Point y = moved(x);
            return fi(s, std::span<const double>(y.data(), n));
        };
    }
    if (f.gradient) {
        h.gradient = [n, moved, fg = *f.gradient](std::span<const double> x, std::span<double> out) {
            const Point y = moved(x);
            fg(std::span<const double>(y.data(), n), out);
        };
    }
    if (f.laplacian) {
        h.laplacian = [n, moved, fl = *f.laplacian](std::span<const double> x) {
            const Point y = moved(x);
            return fl(std::span<const double>(y.data(), n));
        };
    }
    double reach = 0.0;
    for (int a = 0; a < n; ++a) {
        reach = std::max(reach, std::abs(shift[a]));
    }
    h.support_radius = f.support_radius + reach;
    return h;
}

AnalyticField periodized(const AnalyticField& f, double half_width) {
    if (!(half_width > 0.0)) {
        throw Error(ErrorCode::validation, "period half-width must be positive");
    }
    if (!std::isfinite(f.support_radius)) {
        throw Error(ErrorCode::unsupported, "periodization needs a field of bounded (effective) support");
    }
    const int n = f.n;
    const double period = 2.0 * half_width;
    const int images = static_cast<int>(std::ceil((f.support_radius + half_width) / period));
    // reduce to the fundamental cell, then sum the images that can reach it
    auto image_sum = [n, period, images](const auto& g, std::span<const double> x, auto zero, auto accumulate) {
        Point red{0.0, 0.0, 0.0};
        for (int a = 0; a < n; ++a) {
            red[a] = x[a] - period * std::round(x[a] / period);
        }
        auto acc = zero;
        std::array<int, 3> m{0, 0, 0};
        const int span = 2 * images + 1;
        int total = 1;
        for (int a = 0; a < n; ++a) {
            total *= span;
        }
        for (int idx = 0; idx < total; ++idx) {
            int rem = idx;
            Point y{0.0, 0.0, 0.0};
            for (int a = 0; a < n; ++a) {
                m[a] = rem % span - images;
                rem /= span;
                y[a] = red[a] + period * m[a];
            }
            accumulate(acc, g, std::span<const double>(y.data(), n));
        }
        return acc;
    };

    AnalyticField h = base(f.name + "@periodic", n);
    h.eval = [image_sum, fe = f.eval](std::span<const double> x) {
        return image_sum(fe, x, 0.0, [](double& acc, const auto& g, std::span<const double> y) { acc += g(y); });
    };
    if (f.gradient) {
        h.gradient = [n, image_sum, fg = *f.gradient](std::span<const double> x, std::span<double> out) {
            const auto total = image_sum(fg, x, Point{0.0, 0.0, 0.0},
                                         [n](Point& acc, const auto& g, std::span<const double> y) {
                                             Point tmp{0.0, 0.0, 0.0};
                                             g(y, std::span<double>(tmp.data(), n));
                                             for (int a = 0; a < n; ++a) {
                                                 acc[a] += tmp[a];
                                             }
                                         });
            for (int a = 0; a < n; ++a) {
                out[a] = total[a];
            }
        };
    }
    if (f.laplacian) {
        h.laplacian = [image_sum, fl = *f.laplacian](std::span<const double> x) {
            return image_sum(fl, x, 0.0, [](double& acc, const auto& g, std::span<const double> y) { acc += g(y); });
        };
    }
    h.decay = Decay::bounded();
    h.feature_scale = f.feature_scale;
    h.sup_norm = f.sup_norm;
    h.hessian_bound = f.hessian_bound;
    h.period = period;
    if (f.fourier) {
        const std::array<double, 3> zero{0.0, 0.0, 0.0};
        h.mean_at_infinity = (*f.fourier)(std::span<const double>(zero.data(), n)) / std::pow(period, n);
    } else if (f.radial_profile) {
        // int u = |S^{n-1}| int_0^R p(r) r^{n-1} dr
        const double reach = f.support_radius * std::sqrt(double(n));
        const int steps = 20000;
        double acc = 0.0;
        for (int i = 0; i < steps; ++i) {
            const double r = reach * (i + 0.5) / steps;
            acc += (*f.radial_profile)(r) * std::pow(r, n - 1);
        }
        h.mean_at_infinity = sphere_area(n) * acc * reach / steps / std::pow(period, n);
    } else {
        throw Error(ErrorCode::unsupported, "periodization needs a Fourier transform or radial profile for the mean");
    }
    return h;
}

AnalyticField by_name(const std::string& name, int n, const std::map<std::string, double>& params) {
    auto get = [&](const std::string& key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    for (const auto& [key, value] : params) {
        if (!std::isfinite(value)) {
            throw Error(ErrorCode::config, "fixture parameter '" + key + "' is not finite");
        }
    }
    if (name == "gaussian") return gaussian(n, get("sigma", 1.0));
    if (name == "plane_wave") return plane_wave(n, get("k", 1.0));
    if (name == "bump") return bump(n, get("r0", 1.0));
    if (name == "witch") return witch(n);
    if (name == "abs_power_bump") return abs_power_bump(n, get("alpha", 0.5), get("r0", 1.0));
    if (name == "constant") return constant(n, get("value", 1.0));
    if (name == "abs_sin_power") return abs_sin_power(n, get("alpha", 0.5));
    if (name == "lacunary") return lacunary(n, get("alpha", 0.3), static_cast<int>(get("terms", 8)));
    if (name == "smoothed_sign_bump") return smoothed_sign_bump(n, get("width", 0.1), get("r0", 2.0));
    if (name == "bump_pair") {
        const double r0 = get("r0", 1.0);
        const double shift = get("shift", 2.5);
        AnalyticField a = bump(n, r0, Point{-0.5 * shift, 0.0, 0.0});
        AnalyticField b = bump(n, r0, Point{0.5 * shift, 0.0, 0.0});
        AnalyticField pair = combine(1.0, a, -1.0, b);
        pair.name = "bump_pair";
        return pair;
    }
    throw Error(ErrorCode::config, "unknown fixture '" + name + "'");
}

}  // namespace fracsem::fixtures

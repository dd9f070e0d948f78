#include "fracsem/spectral.hpp"

#include "fracsem/error.hpp"
#include "fracsem/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace fracsem {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array interface is.
// Plans are made once per (n, M, direction) with FFTW_ESTIMATE, which keeps
// results bitwise reproducible across runs.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double, FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex, FftwFree>;

RealBuffer real_buffer(std::size_t count) {
    return RealBuffer(static_cast<double*>(fftw_malloc(sizeof(double) * std::max<std::size_t>(count, 1))));
}
ComplexBuffer complex_buffer(std::size_t count) {
    return ComplexBuffer(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * std::max<std::size_t>(count, 1))));
}

std::size_t real_count(int n, int m) {
    std::size_t c = 1;
    for (int a = 0; a < n; ++a) {
        c *= static_cast<std::size_t>(m);
    }
    return c;
}

std::size_t half_count(int n, int m) { return real_count(n - 1, m) * static_cast<std::size_t>(m / 2 + 1); }

fftw_plan get_plan(int n, int m, bool forward) {
    static std::map<std::tuple<int, int, bool>, fftw_plan> cache;
    std::lock_guard lock(planner_mutex());
    const auto key = std::make_tuple(n, m, forward);
    if (auto it = cache.find(key); it != cache.end()) {
        return it->second;
    }
    std::array<int, 3> dims{m, m, m};
    auto r = real_buffer(real_count(n, m));
    auto c = complex_buffer(half_count(n, m));
    fftw_plan plan = forward ? fftw_plan_dft_r2c(n, dims.data(), r.get(), c.get(), FFTW_ESTIMATE)
                             : fftw_plan_dft_c2r(n, dims.data(), c.get(), r.get(), FFTW_ESTIMATE);
    if (plan == nullptr) {
        throw Error(ErrorCode::unsupported, "FFTW could not create a plan");
    }
    cache.emplace(key, plan);
    return plan;
}

}  // namespace

Spectrum::Spectrum(const GridField& g) : n_(g.n()), m_(g.points_per_axis()), half_width_(g.half_width()) {
    const std::size_t rc = real_count(n_, m_);
    const std::size_t hc = half_count(n_, m_);
    auto in = real_buffer(rc);
    auto out = complex_buffer(hc);
    std::copy(g.values().begin(), g.values().end(), in.get());
    fftw_execute_dft_r2c(get_plan(n_, m_, true), in.get(), out.get());
    coeffs_.resize(hc);
    for (std::size_t i = 0; i < hc; ++i) {
        coeffs_[i] = {out.get()[i][0], out.get()[i][1]};
    }

    xi2_.resize(hc);
    for (std::size_t i = 0; i < hc; ++i) {
        double acc = 0.0;
        for (int a = 0; a < n_; ++a) {
            const double k = wavenumber(i, a);
            acc += k * k;
        }
        xi2_[i] = acc;
    }
    // distinct |xi|^2 values are integer multiples of (pi/L)^2, so key on the
    // integer mode norm to avoid floating-point duplicates
    std::map<long, std::uint32_t> seen;
    std::vector<long> keys(hc);
    for (std::size_t i = 0; i < hc; ++i) {
        long k2 = 0;
        for (int a = 0; a < n_; ++a) {
            const long mm = mode(i, a);
            k2 += mm * mm;
        }
        keys[i] = k2;
        seen.emplace(k2, 0);
    }
    const double unit = kPi / half_width_;
    std::uint32_t next = 0;
    for (auto& [k2, idx] : seen) {
        idx = next++;
        distinct_.push_back(unit * unit * static_cast<double>(k2));
    }
    distinct_index_.resize(hc);
    for (std::size_t i = 0; i < hc; ++i) {
        distinct_index_[i] = seen[keys[i]];
        xi2_[i] = distinct_[distinct_index_[i]];
    }
}

int Spectrum::mode(std::size_t i, int axis) const noexcept {
    const std::size_t last = static_cast<std::size_t>(m_ / 2 + 1);
    if (axis == n_ - 1) {
        return static_cast<int>(i % last);
    }
    std::size_t rem = i / last;
    for (int a = n_ - 2; a > axis; --a) {
        rem /= static_cast<std::size_t>(m_);
    }
    const int j = static_cast<int>(rem % static_cast<std::size_t>(m_));
    return j < m_ / 2 ? j : j - m_;
}

double Spectrum::wavenumber(std::size_t i, int axis) const noexcept {
    return kPi * mode(i, axis) / half_width_;
}

bool Spectrum::nyquist(std::size_t i, int axis) const noexcept {
    return std::abs(mode(i, axis)) == m_ / 2;
}

int Spectrum::multiplicity(std::size_t i) const noexcept {
    const int last = mode(i, n_ - 1);
    return (last == 0 || last == m_ / 2) ? 1 : 2;
}

void Spectrum::apply_radial(const std::function<double(double)>& m) {
    std::vector<double> per(distinct_.size());
    for (std::size_t d = 0; d < distinct_.size(); ++d) {
        per[d] = m(distinct_[d]);
    }
    apply_distinct(per);
}

void Spectrum::apply_distinct(std::span<const double> per_distinct) {
    if (per_distinct.size() != distinct_.size()) {
        throw Error(ErrorCode::validation, "multiplier table size mismatch");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] *= per_distinct[distinct_index_[i]];
    }
}

GridField Spectrum::to_field(std::string source) const {
    const std::size_t rc = real_count(n_, m_);
    auto in = complex_buffer(coeffs_.size());
    auto out = real_buffer(rc);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        in.get()[i][0] = coeffs_[i].real();
        in.get()[i][1] = coeffs_[i].imag();
    }
    fftw_execute_dft_c2r(get_plan(n_, m_, false), in.get(), out.get());
    std::vector<double> values(out.get(), out.get() + rc);
    const double scale = 1.0 / static_cast<double>(rc);
    for (double& v : values) {
        v *= scale;
    }
    return GridField(n_, half_width_, m_, std::move(values), std::move(source));
}

double Spectrum::mean() const noexcept {
    return coeffs_[0].real() / static_cast<double>(real_count(n_, m_));
}

GridField apply_radial_multiplier(const GridField& u, const std::function<double(double)>& m, std::string source) {
    Spectrum sp(u);
    sp.apply_radial(m);
    return sp.to_field(source.empty() ? u.source() : std::move(source));
}

GridField spectral_derivative(const GridField& u, int axis, int order) {
    if (axis < 0 || axis >= u.n() || order < 0) {
        throw Error(ErrorCode::validation, "bad axis or derivative order");
    }
    Spectrum sp(u);
    auto coeffs = sp.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (order % 2 == 1 && sp.nyquist(i, axis)) {
            coeffs[i] = 0.0;
            continue;
        }
        std::complex<double> factor = 1.0;
        const std::complex<double> ik(0.0, sp.wavenumber(i, axis));
        for (int o = 0; o < order; ++o) {
            factor *= ik;
        }
        coeffs[i] *= factor;
    }
    return sp.to_field(u.source());
}

GridField shift_cells(const GridField& u, std::span<const long> cells) {
    std::vector<double> out(u.size());
    std::array<long, 3> multi{0, 0, 0};
    const int m = u.points_per_axis();
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::size_t rem = i;
        for (int a = u.n() - 1; a >= 0; --a) {
            multi[a] = static_cast<long>(rem % m) - cells[a];
            rem /= m;
        }
        out[i] = u[u.index(multi)];
    }
    return u.with_values(std::move(out));
}

}  // namespace fracsem

#!/usr/bin/env python3
"""Regenerates the pinned constants frozen into tests/oracle_values.hpp.

Every value is computed with 50-digit mpmath arithmetic, independently of the
library (closed forms where they exist, mpmath quadrature otherwise).
"""
import mpmath as mp

mp.mp.dps = 50


def c_ns(n, s):
    return 4**s * mp.gamma(mp.mpf(n) / 2 + s) / (abs(mp.gamma(-s)) * mp.pi**(mp.mpf(n) / 2))


def c_n_negs(n, s):
    return mp.gamma(mp.mpf(n) / 2 - s) / (4**s * mp.gamma(s) * mp.pi**(mp.mpf(n) / 2))


def gauss_frac_1d(s, x):
    # (-Delta)^s exp(-x^2) on R via the Fourier-cosine integral
    f = lambda xi: xi**(2 * s) * mp.sqrt(mp.pi) * mp.exp(-xi**2 / 4) * mp.cos(x * xi)
    return mp.quad(f, [0, 5, 10, 20, mp.inf]) / mp.pi


def gauss_frac_1d_closed(s, x):
    return 4**s * mp.gamma(s + mp.mpf(1) / 2) / mp.sqrt(mp.pi) * mp.hyp1f1(s + mp.mpf(1) / 2, mp.mpf(1) / 2, -x**2)


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(value, 20, strip_zeros=False)};")


s3 = mp.mpf("0.3")
emit("kGammaMinus03", mp.gamma(-s3))
emit("kGamma03Times4PowMinus03", mp.gamma(s3) * mp.mpf(4)**(-s3))
emit("kCns_1_half", c_ns(1, mp.mpf("0.5")))
emit("kCns_2_quarter", c_ns(2, mp.mpf("0.25")))
emit("kCnNegs_3_half", c_n_negs(3, mp.mpf("0.5")))
for s in ["0.4", "0.45", "0.49"]:
    emit("kCnNegs_1_" + s.replace(".", "p"), c_n_negs(1, mp.mpf(s)))
emit("kRieszLog_1_at1", -mp.euler / (2 * mp.pi))
emit("kEulerGamma", mp.euler)
emit("kEulerGammaQuad", -mp.quad(lambda r: mp.exp(-r) * mp.log(r), [0, 1, mp.inf]))
for s in ["0.25", "0.5", "0.75"]:
    for x in ["0", "0.5", "1.3"]:
        v = gauss_frac_1d(mp.mpf(s), mp.mpf(x))
        w = gauss_frac_1d_closed(mp.mpf(s), mp.mpf(x))
        assert abs(v - w) < mp.mpf("1e-30")
        emit(f"kGaussFrac_s{s.replace('.', 'p')}_x{x.replace('.', 'p')}", v)
emit("kGaussFrac_s0p3_x0", gauss_frac_1d(mp.mpf("0.3"), 0))
emit("kGaussFrac_s0p7_x0", gauss_frac_1d(mp.mpf("0.7"), 0))
emit("kBesselK_half_1", mp.besselk(mp.mpf("0.5"), 1))
emit("kBesselK_half_2", mp.besselk(mp.mpf("0.5"), 2))
emit("kBesselK_03_15", mp.besselk(mp.mpf("0.3"), mp.mpf("1.5")))
emit("kCsNeumann_03", mp.gamma(1 - s3) / (4**(s3 - mp.mpf(1) / 2) * mp.gamma(s3)))
emit("kCsQuotient_07", mp.gamma(1 - mp.mpf("0.7")) / (4**mp.mpf("0.7") * mp.gamma(1 + mp.mpf("0.7"))))
# ||u||_{L_s} for u = 1, n = 1, s = 1/2: int dx / (1 + x^2)
emit("kLsNormOne", mp.quad(lambda x: 1 / (1 + x**2), [-mp.inf, 0, mp.inf]))
# L_s norm of the witch (1 + x^2)^(-1) in 1D at s = 0.25 and 0.75
for s in ["0.25", "0.75"]:
    emit("kLsWitch_" + s.replace(".", "p"),
         mp.quad(lambda x: (1 + x**2)**-1 / (1 + abs(x)**(1 + 2 * mp.mpf(s))), [-mp.inf, -1, 0, 1, mp.inf]))
# [u]_{H^s}^2 for exp(-x^2): (1/2pi) int |xi|^{2s} pi exp(-xi^2/2)
for s in ["0.3", "0.5", "0.7"]:
    sv = mp.mpf(s)
    emit("kHsGauss_" + s.replace(".", "p"),
         mp.quad(lambda xi: abs(xi)**(2 * sv) * mp.pi * mp.exp(-xi**2 / 2), [-mp.inf, 0, mp.inf]) / (2 * mp.pi))


def ext_multiplier(s, z):
    # Fourier multiplier of the extension: (2^{1-s}/Gamma(s)) z^s K_s(z)
    return 2**(1 - s) / mp.gamma(s) * z**s * mp.besselk(s, z)


def ext_gauss_1d(s, x, y):
    # U(x, y) for u = exp(-x^2) on R
    f = lambda xi: mp.sqrt(mp.pi) * mp.exp(-xi**2 / 4) * ext_multiplier(s, y * xi) * mp.cos(x * xi)
    return mp.quad(f, [0, 2, 5, 10, 20, mp.inf]) / mp.pi


for s in ["0.3", "0.7"]:
    for y in ["0.5", "3"]:
        emit(f"kExtGauss_s{s.replace('.', 'p')}_x0p7_y{y.replace('.', 'p')}",
             ext_gauss_1d(mp.mpf(s), mp.mpf("0.7"), mp.mpf(y)))
for s in ["0.25", "0.75"]:
    emit(f"kExtMultiplier_s{s.replace('.', 'p')}_z1", ext_multiplier(mp.mpf(s), 1))

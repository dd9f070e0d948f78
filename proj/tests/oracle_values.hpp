#pragma once

// Generated by tests/oracles/gen_oracles.py (50-digit mpmath). Do not edit by hand.

namespace oracle {

inline constexpr double kGammaMinus03 = -4.3268511088251926189;
inline constexpr double kGamma03Times4PowMinus03 = 1.9736994724383174700;
inline constexpr double kCns_1_half = 0.31830988618379067154;
inline constexpr double kCns_2_quarter = 0.083241983875425065489;
inline constexpr double kCnNegs_3_half = 0.050660591821168885722;
inline constexpr double kCnNegs_1_0p4 = 1.3897892913010338077;
inline constexpr double kCnNegs_1_0p45 = 2.9909608495551631313;
inline constexpr double kCnNegs_1_0p49 = 15.730178564247412544;
inline constexpr double kRieszLog_1_at1 = -0.091866726299153990380;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kEulerGammaQuad = 0.57721566490153286061;
inline constexpr double kGaussFrac_s0p25_x0 = 0.97774106744692379763;
inline constexpr double kGaussFrac_s0p25_x0p5 = 0.65996857132178022736;
inline constexpr double kGaussFrac_s0p25_x1p3 = -0.073379988188522322774;
inline constexpr double kGaussFrac_s0p5_x0 = 1.1283791670955125739;
inline constexpr double kGaussFrac_s0p5_x0p5 = 0.64945399419446910135;
inline constexpr double kGaussFrac_s0p5_x1p3 = -0.28980562181557611325;
inline constexpr double kGaussFrac_s0p75_x0 = 1.4464090846320771425;
inline constexpr double kGaussFrac_s0p75_x0p5 = 0.69485785540257810297;
inline constexpr double kGaussFrac_s0p75_x1p3 = -0.54134616986673386810;
inline constexpr double kGaussFrac_s0p3_x0 = 0.99559278421583461105;
inline constexpr double kGaussFrac_s0p7_x0 = 1.3670662493152458197;
inline constexpr double kBesselK_half_1 = 0.46106850444789455844;
inline constexpr double kBesselK_half_2 = 0.11993777196806144737;
inline constexpr double kBesselK_03_15 = 0.21893795473217301863;
inline constexpr double kCsNeumann_03 = 0.57254045856831173310;
inline constexpr double kCsQuotient_07 = 1.2475724703750179571;
inline constexpr double kLsNormOne = 3.1415926535897932385;
inline constexpr double kLsWitch_0p25 = 1.5707963267948966192;
inline constexpr double kLsWitch_0p75 = 1.5707963267948966192;
inline constexpr double kHsGauss_0p3 = 1.0135208330896482010;
inline constexpr double kHsGauss_0p5 = 1.0000000000000000000;
inline constexpr double kHsGauss_0p7 = 1.0546989240043014018;
inline constexpr double kExtGauss_s0p3_x0p7_y0p5 = 0.36679016665160438180;
inline constexpr double kExtGauss_s0p3_x0p7_y3 = 0.12039625272616248355;
inline constexpr double kExtGauss_s0p7_x0p7_y0p5 = 0.52095677490203156187;
inline constexpr double kExtGauss_s0p7_x0p7_y3 = 0.21135824272112959943;
inline constexpr double kExtMultiplier_s0p25_z1 = 0.19980502117429667895;
inline constexpr double kExtMultiplier_s0p75_z1 = 0.50053476184578457112;

}  // namespace oracle

#pragma once

// Reference scalar exp and sincospi. The AVX2 kernels evaluate the same
// operation sequence lane-wise, so results agree bit for bit.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

namespace toridouble::kernels::detail {

inline constexpr double kLog2e = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kPi = 3.141592653589793116;
inline constexpr double kExpLow = -708.0;
inline constexpr double kExpHigh = 709.0;

// 1/i!, i = 0..13
inline constexpr double kExpCoef[14] = {
    1.0,
    1.0,
    0.5,
    1.6666666666666666e-01,
    4.1666666666666664e-02,
    8.3333333333333332e-03,
    1.3888888888888889e-03,
    1.9841269841269841e-04,
    2.4801587301587302e-05,
    2.7557319223985893e-06,
    2.7557319223985888e-07,
    2.5052108385441720e-08,
    2.0876756987868100e-09,
    1.6059043836821613e-10,
};

// (-1)^j / (2j+1)!, j = 0..9
inline constexpr double kSinCoef[10] = {
    1.0,
    -1.6666666666666666e-01,
    8.3333333333333332e-03,
    -1.9841269841269841e-04,
    2.7557319223985893e-06,
    -2.5052108385441720e-08,
    1.6059043836821613e-10,
    -7.6471637318198164e-13,
    2.8114572543455206e-15,
    -8.2206352466243295e-18,
};

// (-1)^j / (2j)!, j = 0..10
inline constexpr double kCosCoef[11] = {
    1.0,
    -0.5,
    4.1666666666666664e-02,
    -1.3888888888888889e-03,
    2.4801587301587302e-05,
    -2.7557319223985888e-07,
    2.0876756987868100e-09,
    -1.1470745597729725e-11,
    4.7794773323873853e-14,
    -1.5619206968586225e-16,
    4.1103176233121648e-19,
};

static inline double exp_ref(double x) {
    if (!(x > kExpLow)) return 0.0;
    if (x > kExpHigh) return std::numeric_limits<double>::infinity();
    double k = std::nearbyint(x * kLog2e);
    double r = (x - k * kLn2Hi) - k * kLn2Lo;
    double p = kExpCoef[13];
    for (int i = 12; i >= 0; --i) p = p * r + kExpCoef[i];
    std::int64_t bits = (static_cast<std::int64_t>(k) + 1023) << 52;
    double scale;
    std::memcpy(&scale, &bits, sizeof scale);
    return p * scale;
}

static inline std::int32_t to_int32_like_cvt(double n) {
    // mirrors _mm256_cvtpd_epi32 on out-of-range input
    if (!(std::fabs(n) < 2147483648.0)) return std::numeric_limits<std::int32_t>::min();
    return static_cast<std::int32_t>(n);
}

static inline void sincospi_ref(double x, double& c, double& s) {
    double n = std::nearbyint(x + x);
    double f = x - 0.5 * n;
    double t = f * kPi;
    double t2 = t * t;
    double ps = kSinCoef[9];
    for (int j = 8; j >= 0; --j) ps = ps * t2 + kSinCoef[j];
    double pc = kCosCoef[10];
    for (int j = 9; j >= 0; --j) pc = pc * t2 + kCosCoef[j];
    double sv = t * ps;
    double cv = pc;
    switch (to_int32_like_cvt(n) & 3) {
        case 0: c = cv; s = sv; break;
        case 1: c = -sv; s = cv; break;
        case 2: c = -cv; s = -sv; break;
        default: c = sv; s = -cv; break;
    }
}

}  // namespace toridouble::kernels::detail

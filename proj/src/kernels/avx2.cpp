// Compiled with -mavx2 (no FMA); only entered after a runtime CPU check.

#include <immintrin.h>

#include "kernel_math.hpp"
#include "toridouble/kernels.hpp"

namespace toridouble::kernels {

namespace {

inline __m256d exp4(__m256d x) {
    const __m256d lo_mask = _mm256_cmp_pd(x, _mm256_set1_pd(detail::kExpLow), _CMP_GT_OQ);
    const __m256d hi_mask = _mm256_cmp_pd(x, _mm256_set1_pd(detail::kExpHigh), _CMP_GT_OQ);
    __m256d xc = _mm256_blendv_pd(_mm256_setzero_pd(), x, lo_mask);
    xc = _mm256_blendv_pd(xc, _mm256_setzero_pd(), hi_mask);
    __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, _mm256_set1_pd(detail::kLog2e)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_sub_pd(_mm256_sub_pd(xc, _mm256_mul_pd(k, _mm256_set1_pd(detail::kLn2Hi))),
                              _mm256_mul_pd(k, _mm256_set1_pd(detail::kLn2Lo)));
    __m256d p = _mm256_set1_pd(detail::kExpCoef[13]);
    for (int i = 12; i >= 0; --i) p = _mm256_add_pd(_mm256_mul_pd(p, r), _mm256_set1_pd(detail::kExpCoef[i]));
    __m128i k32 = _mm256_cvtpd_epi32(k);
    __m256i k64 = _mm256_cvtepi32_epi64(k32);
    __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    __m256d res = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
    res = _mm256_blendv_pd(_mm256_setzero_pd(), res, lo_mask);
    res = _mm256_blendv_pd(res, _mm256_set1_pd(std::numeric_limits<double>::infinity()), hi_mask);
    return res;
}

inline void sincospi4(__m256d x, __m256d& c, __m256d& s) {
    __m256d n = _mm256_round_pd(_mm256_add_pd(x, x), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d f = _mm256_sub_pd(x, _mm256_mul_pd(_mm256_set1_pd(0.5), n));
    __m256d t = _mm256_mul_pd(f, _mm256_set1_pd(detail::kPi));
    __m256d t2 = _mm256_mul_pd(t, t);
    __m256d ps = _mm256_set1_pd(detail::kSinCoef[9]);
    for (int j = 8; j >= 0; --j) ps = _mm256_add_pd(_mm256_mul_pd(ps, t2), _mm256_set1_pd(detail::kSinCoef[j]));
    __m256d pc = _mm256_set1_pd(detail::kCosCoef[10]);
    for (int j = 9; j >= 0; --j) pc = _mm256_add_pd(_mm256_mul_pd(pc, t2), _mm256_set1_pd(detail::kCosCoef[j]));
    __m256d sv = _mm256_mul_pd(t, ps);
    __m256d cv = pc;
    __m128i q32 = _mm_and_si128(_mm256_cvtpd_epi32(n), _mm_set1_epi32(3));
    __m256i q = _mm256_cvtepi32_epi64(q32);
    __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(1)));
    // quadrant 1,3 swap roles; sign of cos for q in {1,2}, of sin for q in {2,3}
    __m256d cbase = _mm256_blendv_pd(cv, sv, swap);
    __m256d sbase = _mm256_blendv_pd(sv, cv, swap);
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256i one = _mm256_set1_epi64x(1), two = _mm256_set1_epi64x(2), three = _mm256_set1_epi64x(3);
    __m256d cneg = _mm256_castsi256_pd(_mm256_or_si256(_mm256_cmpeq_epi64(q, one), _mm256_cmpeq_epi64(q, two)));
    __m256d sneg = _mm256_castsi256_pd(_mm256_or_si256(_mm256_cmpeq_epi64(q, two), _mm256_cmpeq_epi64(q, three)));
    c = _mm256_xor_pd(cbase, _mm256_and_pd(cneg, sign));
    s = _mm256_xor_pd(sbase, _mm256_and_pd(sneg, sign));
}

void exp_cispi_avx2(const double* re, const double* ph, double* out_re, double* out_im, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d m = exp4(_mm256_loadu_pd(re + i));
        __m256d c, s;
        sincospi4(_mm256_loadu_pd(ph + i), c, s);
        _mm256_storeu_pd(out_re + i, _mm256_mul_pd(m, c));
        _mm256_storeu_pd(out_im + i, _mm256_mul_pd(m, s));
    }
    for (; i < n; ++i) {
        double m = detail::exp_ref(re[i]);
        double c, s;
        detail::sincospi_ref(ph[i], c, s);
        out_re[i] = m * c;
        out_im[i] = m * s;
    }
}

inline void two_sum4(__m256d& sum, __m256d& err, __m256d x) {
    __m256d s = _mm256_add_pd(sum, x);
    __m256d bp = _mm256_sub_pd(s, sum);
    __m256d e = _mm256_add_pd(_mm256_sub_pd(sum, _mm256_sub_pd(s, bp)), _mm256_sub_pd(x, bp));
    sum = s;
    err = _mm256_add_pd(err, e);
}

void accumulate_avx2(const double* re, const double* im, std::size_t n, LaneSums& acc) {
    __m256d rs = _mm256_loadu_pd(acc.re_sum), re_ = _mm256_loadu_pd(acc.re_err);
    __m256d is = _mm256_loadu_pd(acc.im_sum), ie = _mm256_loadu_pd(acc.im_err);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        two_sum4(rs, re_, _mm256_loadu_pd(re + i));
        two_sum4(is, ie, _mm256_loadu_pd(im + i));
    }
    _mm256_storeu_pd(acc.re_sum, rs);
    _mm256_storeu_pd(acc.re_err, re_);
    _mm256_storeu_pd(acc.im_sum, is);
    _mm256_storeu_pd(acc.im_err, ie);
    for (; i < n; ++i) {
        std::size_t lane = i & 3;
        double x = re[i];
        double s = acc.re_sum[lane] + x;
        double bp = s - acc.re_sum[lane];
        acc.re_err[lane] = acc.re_err[lane] + ((acc.re_sum[lane] - (s - bp)) + (x - bp));
        acc.re_sum[lane] = s;
        x = im[i];
        s = acc.im_sum[lane] + x;
        bp = s - acc.im_sum[lane];
        acc.im_err[lane] = acc.im_err[lane] + ((acc.im_sum[lane] - (s - bp)) + (x - bp));
        acc.im_sum[lane] = s;
    }
}

}  // namespace

namespace avx2_impl {
const KernelSet& kernels() {
    static const KernelSet set{"avx2", &exp_cispi_avx2, &accumulate_avx2};
    return set;
}
}  // namespace avx2_impl

}  // namespace toridouble::kernels

#include "kernel_math.hpp"
#include "toridouble/kernels.hpp"

namespace toridouble::kernels {

namespace {

void exp_cispi_scalar(const double* re, const double* ph, double* out_re, double* out_im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double m = detail::exp_ref(re[i]);
        double c, s;
        detail::sincospi_ref(ph[i], c, s);
        out_re[i] = m * c;
        out_im[i] = m * s;
    }
}

inline void two_sum_into(double& sum, double& err, double x) {
    double s = sum + x;
    double bp = s - sum;
    double e = (sum - (s - bp)) + (x - bp);
    sum = s;
    err = err + e;
}

void accumulate_scalar(const double* re, const double* im, std::size_t n, LaneSums& acc) {
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lane = i & 3;
        two_sum_into(acc.re_sum[lane], acc.re_err[lane], re[i]);
        two_sum_into(acc.im_sum[lane], acc.im_err[lane], im[i]);
    }
}

}  // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{"scalar", &exp_cispi_scalar, &accumulate_scalar};
    return set;
}

}  // namespace toridouble::kernels

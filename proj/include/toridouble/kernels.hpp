#pragma once

#include <cstddef>

namespace toridouble::kernels {

// Per-lane compensated sums; element i of a call goes to lane i % 4.
struct LaneSums {
    double re_sum[4] = {0, 0, 0, 0};
    double re_err[4] = {0, 0, 0, 0};
    double im_sum[4] = {0, 0, 0, 0};
    double im_err[4] = {0, 0, 0, 0};
};

// out = exp(re) · (cos(pi·ph), sin(pi·ph))
using ExpCispiFn = void (*)(const double* re, const double* ph, double* out_re, double* out_im, std::size_t n);
using AccumulateFn = void (*)(const double* re, const double* im, std::size_t n, LaneSums& acc);

struct KernelSet {
    const char* name;
    ExpCispiFn exp_cispi;
    AccumulateFn accumulate;
};

const KernelSet& scalar_kernels();
// nullptr when not built for x86-64 or the CPU lacks AVX2
const KernelSet* avx2_kernels();
// AVX2 when available unless TORIDOUBLE_KERNELS=scalar
const KernelSet& active_kernels();

}  // namespace toridouble::kernels

#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "toridouble/ddouble.hpp"
#include "toridouble/matrix.hpp"
#include "toridouble/summation.hpp"

namespace toridouble {

enum class Precision { binary64, double_double };

std::string to_string(Precision p);
Precision parse_precision(const std::string& s);
double default_tol(Precision p);

struct NumericPolicy {
    Precision precision = Precision::binary64;
    double tol = 1e-10;
    int max_radius = 64;
    unsigned workers = 1;
};

struct TruncationCertificate {
    int radius = 0;            // largest l-infinity shell summed
    double tail_bound = 0.0;   // rigorous bound on everything beyond radius
    double lambda_min = 0.0;   // certified lower bound for the Gaussian form
};

// Rational lower bound for the smallest eigenvalue of the symmetric part of q,
// verified by an exact leading-minor test on q - lambda·Id.
Rational certified_lambda_min(const RatMatrix& q);

// Smallest M with
//   sum_{s > M} 2·dim·(2s+1)^(dim-1) · C · exp(-pi·lambda·(s - s0)^2 + L·s) <= tol,
// bounded by geometric domination. C = exp(log_prefactor).
TruncationCertificate truncation_radius(const RatMatrix& q, double linear_bound, double tol, int max_radius = 64,
                                        double center = 0.0, double log_prefactor = 0.0);

// the same bound evaluated at a fixed radius; +inf when it does not apply there
TruncationCertificate tail_at_radius(const RatMatrix& q, int radius, double linear_bound, double center = 0.0,
                                     double log_prefactor = 0.0);

// Integer points of the box [-radius, radius]^dim ordered by l-infinity shell,
// lexicographically inside a shell; flattened, dim ints per point.
std::vector<int> shell_points(int dim, int radius);

template <class R>
struct LogTerm {
    R re;  // log-modulus
    R ph;  // phase in half-turns: term = exp(re)·exp(i·pi·ph)
};

// Sum of exp(re)·exp(i·pi·ph) over the shell-ordered box, evaluated in fixed
// blocks and reduced with the deterministic tree. term(const int* m) -> LogTerm<R>.
template <class R, class F>
Cx<R> lattice_sum(int dim, int radius, F&& term, unsigned workers = 1);

}  // namespace toridouble

namespace toridouble {

template <class R, class F>
Cx<R> lattice_sum(int dim, int radius, F&& term, unsigned workers) {
    const std::vector<int> pts = shell_points(dim, radius);
    const std::size_t count = dim > 0 ? pts.size() / static_cast<std::size_t>(dim) : 1;
    const std::size_t blocks = (count + kSumBlock - 1) / kSumBlock;
    std::vector<CxDD> partials(blocks);
    if constexpr (std::is_same_v<R, double>) {
        const auto& k = kernels::active_kernels();
        for_each_block(blocks, workers, [&](std::size_t b) {
            std::size_t begin = b * kSumBlock, end = std::min(count, begin + kSumBlock);
            std::vector<double> re(end - begin), ph(end - begin), vr(end - begin), vi(end - begin);
            for (std::size_t i = begin; i < end; ++i) {
                LogTerm<double> t = term(pts.data() + i * static_cast<std::size_t>(dim));
                re[i - begin] = t.re;
                ph[i - begin] = t.ph;
            }
            k.exp_cispi(re.data(), ph.data(), vr.data(), vi.data(), end - begin);
            kernels::LaneSums acc;
            k.accumulate(vr.data(), vi.data(), end - begin, acc);
            partials[b] = lanes_to_dd(acc);
        });
        CxDD total = tree_combine(std::move(partials));
        return {total.re.hi + total.re.lo, total.im.hi + total.im.lo};
    } else {
        for_each_block(blocks, workers, [&](std::size_t b) {
            std::size_t begin = b * kSumBlock, end = std::min(count, begin + kSumBlock);
            CxDD acc{DD(0.0), DD(0.0)};
            for (std::size_t i = begin; i < end; ++i) {
                LogTerm<DD> t = term(pts.data() + i * static_cast<std::size_t>(dim));
                acc += exp_cispi<DD>(t.re, t.ph);
            }
            partials[b] = acc;
        });
        return tree_combine(std::move(partials));
    }
}

}  // namespace toridouble

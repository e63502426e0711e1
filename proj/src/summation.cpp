#include "toridouble/summation.hpp"

namespace toridouble {

CxDD lanes_to_dd(const kernels::LaneSums& acc) {
    DD re[4], im[4];
    for (int j = 0; j < 4; ++j) {
        re[j] = dd_detail::two_sum(acc.re_sum[j], acc.re_err[j]);
        im[j] = dd_detail::two_sum(acc.im_sum[j], acc.im_err[j]);
    }
    return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

CxDD tree_combine(std::vector<CxDD> partials) {
    if (partials.empty()) return {DD(0.0), DD(0.0)};
    while (partials.size() > 1) {
        std::vector<CxDD> next;
        next.reserve((partials.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < partials.size(); i += 2) next.push_back(partials[i] + partials[i + 1]);
        if (partials.size() % 2) next.push_back(partials.back());
        partials.swap(next);
    }
    return partials.front();
}

CxD compensated_sum(std::span<const std::complex<double>> terms, unsigned workers) {
    const std::size_t blocks = (terms.size() + kSumBlock - 1) / kSumBlock;
    std::vector<CxDD> partials(blocks);
    const auto& k = kernels::active_kernels();
    for_each_block(blocks, workers, [&](std::size_t b) {
        std::size_t begin = b * kSumBlock, end = std::min(terms.size(), begin + kSumBlock);
        double re[kSumBlock], im[kSumBlock];
        for (std::size_t i = begin; i < end; ++i) {
            re[i - begin] = terms[i].real();
            im[i - begin] = terms[i].imag();
        }
        kernels::LaneSums acc;
        k.accumulate(re, im, end - begin, acc);
        partials[b] = lanes_to_dd(acc);
    });
    CxDD total = tree_combine(std::move(partials));
    return {total.re.hi + total.re.lo, total.im.hi + total.im.lo};
}

CxDD compensated_sum_dd(std::span<const CxDD> terms, unsigned workers) {
    const std::size_t blocks = (terms.size() + kSumBlock - 1) / kSumBlock;
    std::vector<CxDD> partials(blocks);
    for_each_block(blocks, workers, [&](std::size_t b) {
        std::size_t begin = b * kSumBlock, end = std::min(terms.size(), begin + kSumBlock);
        CxDD acc{DD(0.0), DD(0.0)};
        for (std::size_t i = begin; i < end; ++i) acc += terms[i];
        partials[b] = acc;
    });
    return tree_combine(std::move(partials));
}

}  // namespace toridouble

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "toridouble/ddouble.hpp"
#include "toridouble/kernels.hpp"

namespace toridouble {

// Terms are grouped into fixed index blocks; a block is summed with four
// compensated lanes and blocks are merged by a fixed pairwise tree, so the
// result depends only on the term order, never on how blocks are shared out.
inline constexpr std::size_t kSumBlock = 1024;

CxDD lanes_to_dd(const kernels::LaneSums& acc);
CxDD tree_combine(std::vector<CxDD> partials);

CxD compensated_sum(std::span<const std::complex<double>> terms, unsigned workers = 1);
CxDD compensated_sum_dd(std::span<const CxDD> terms, unsigned workers = 1);

// Runs body(b) for every block index in [0, blocks) split over workers
// contiguous ranges.
template <class Body>
void for_each_block(std::size_t blocks, unsigned workers, Body&& body);

}  // namespace toridouble

#include <thread>

namespace toridouble {

template <class Body>
void for_each_block(std::size_t blocks, unsigned workers, Body&& body) {
    if (workers <= 1 || blocks <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) body(b);
        return;
    }
    std::size_t w = std::min<std::size_t>(workers, blocks);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
        std::size_t begin = blocks * t / w, end = blocks * (t + 1) / w;
        pool.emplace_back([begin, end, &body] {
            for (std::size_t b = begin; b < end; ++b) body(b);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace toridouble

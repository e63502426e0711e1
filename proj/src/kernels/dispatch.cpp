#include <cstdlib>
#include <cstring>

#include "toridouble/kernels.hpp"

namespace toridouble::kernels {

#if defined(TORIDOUBLE_HAVE_AVX2)
namespace avx2_impl {
const KernelSet& kernels();
}
#endif

const KernelSet* avx2_kernels() {
#if defined(TORIDOUBLE_HAVE_AVX2)
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok ? &avx2_impl::kernels() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active_kernels() {
    static const KernelSet* chosen = [] {
        const char* env = std::getenv("TORIDOUBLE_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
        const KernelSet* v = avx2_kernels();
        return v ? v : &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace toridouble::kernels

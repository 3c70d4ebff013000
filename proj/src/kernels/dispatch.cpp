#include "kernels_impl.hpp"

#include <cstdlib>
#include <cstring>

namespace ntl::kernels {

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", scalar::shifted_sum, scalar::signed_dot,
                                   scalar::elimination_rank};
    return table;
}

const KernelTable* avx2_kernels() {
#if defined(NTL_HAVE_AVX2)
    static const KernelTable table{"avx2", avx2::shifted_sum, avx2::signed_dot,
                                   avx2::elimination_rank};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* force = std::getenv("NTL_KERNELS");
        if (force != nullptr && std::strcmp(force, "scalar") == 0) return scalar_kernels();
        if (const KernelTable* t = avx2_kernels()) return *t;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace ntl::kernels

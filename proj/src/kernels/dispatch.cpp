#include <atomic>
#include <cstdlib>
#include <string_view>

#include "disturbsim/kernels/bitops.hpp"

namespace disturbsim::kernels {

#if defined(DISTURBSIM_HAVE_AVX2)
const BitKernels& avx2_kernels_impl();
#endif

const BitKernels* avx2_kernels() {
#if defined(DISTURBSIM_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    }();
    return supported ? &avx2_kernels_impl() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const BitKernels* choose() {
    if (const char* env = std::getenv("DISTURBSIM_KERNELS")) {
        if (std::string_view(env) == "scalar") return &scalar_kernels();
    }
    if (const BitKernels* wide = avx2_kernels()) return wide;
    return &scalar_kernels();
}

std::atomic<const BitKernels*>& slot() {
    static std::atomic<const BitKernels*> s{choose()};
    return s;
}

}  // namespace

const BitKernels& active() { return *slot().load(std::memory_order_relaxed); }

void set_active(const BitKernels& k) { slot().store(&k, std::memory_order_relaxed); }

}  // namespace disturbsim::kernels

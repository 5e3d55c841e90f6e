#include "muzzle/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace muzzle::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Backend pick_backend() {
    const char* env = std::getenv("MUZZLE_KERNEL_BACKEND");
    if (env) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2() && avx2_ops())
            return Backend::avx2;
        return Backend::scalar;
    }
    return (cpu_has_avx2() && avx2_ops()) ? Backend::avx2 : Backend::scalar;
}

} // namespace

Backend active_backend() {
    static const Backend b = pick_backend();
    return b;
}

const Ops& ops() {
    static const Ops& table =
        (active_backend() == Backend::avx2) ? *avx2_ops() : scalar_ops();
    return table;
}

std::string backend_name() {
    return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

} // namespace muzzle::kernels

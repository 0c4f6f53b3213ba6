#include "fdakit/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fdakit::kernels {

#if defined(FDAKIT_HAVE_AVX2)
const Ops& avx2_ops();
#endif
#if defined(__aarch64__)
const Ops& neon_ops();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(FDAKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* pick() {
    const char* want = std::getenv("FDAKIT_SIMD");
    if (want != nullptr && std::strcmp(want, "scalar") == 0) return &scalar_ops();
#if defined(FDAKIT_HAVE_AVX2)
    if (want != nullptr && std::strcmp(want, "avx2") == 0 && cpu_has_avx2()) return &avx2_ops();
#endif
#if defined(__aarch64__)
    if (want == nullptr || std::strcmp(want, "auto") == 0 || std::strcmp(want, "neon") == 0)
        return &neon_ops();
#endif
#if defined(FDAKIT_HAVE_AVX2)
    if ((want == nullptr || std::strcmp(want, "auto") == 0) && cpu_has_avx2()) return &avx2_ops();
#endif
    return &scalar_ops();
}

}  // namespace

std::vector<const Ops*> available_ops() {
    std::vector<const Ops*> v{&scalar_ops()};
#if defined(FDAKIT_HAVE_AVX2)
    if (cpu_has_avx2()) v.push_back(&avx2_ops());
#endif
#if defined(__aarch64__)
    v.push_back(&neon_ops());
#endif
    return v;
}

const Ops& active() {
    static const Ops* chosen = pick();
    return *chosen;
}

std::string active_name() { return active().name; }

}  // namespace fdakit::kernels

#include "moebius/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace moebius::kernels {

namespace {

constexpr KernelSet kScalar{
    Isa::scalar,
    "scalar",
    detail::count_signs_scalar,
    detail::prefix_sum_scalar,
    detail::weighted_floor_sum_scalar,
};

#if defined(MOEBIUS_HAVE_AVX2)
constexpr KernelSet kAvx2{
    Isa::avx2,
    "avx2",
    detail::count_signs_avx2,
    detail::prefix_sum_avx2,
    detail::weighted_floor_sum_avx2,
};

bool cpu_has_avx2() noexcept
{
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}
#endif

const KernelSet& select() noexcept
{
    if (const char* forced = std::getenv("MOEBIUS_KERNEL");
        forced != nullptr && std::string_view(forced) == "scalar")
        return kScalar;
    if (const KernelSet* k = kernels_for(Isa::avx2))
        return *k;
    return kScalar;
}

} // namespace

const KernelSet& scalar_kernels() noexcept
{
    return kScalar;
}

const KernelSet* kernels_for(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return &kScalar;
    case Isa::avx2:
#if defined(MOEBIUS_HAVE_AVX2)
        if (cpu_has_avx2())
            return &kAvx2;
#endif
        return nullptr;
    }
    return nullptr;
}

const KernelSet& active() noexcept
{
    static const KernelSet& chosen = select();
    return chosen;
}

} // namespace moebius::kernels

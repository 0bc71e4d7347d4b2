#include "kernels_impl.hpp"

#include <immintrin.h>

namespace moebius::kernels::detail {

namespace {

std::uint64_t hsum_u64(__m256i v)
{
    const __m128i s = _mm_add_epi64(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(s))
         + static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

double hsum_pd(__m256d v)
{
    const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

SignCounts count_signs_avx2(const std::int8_t* values, std::size_t n)
{
    const __m256i one = _mm256_set1_epi8(1);
    const __m256i neg = _mm256_set1_epi8(-1);
    const __m256i zero = _mm256_setzero_si256();

    __m256i plus64 = zero;
    __m256i minus64 = zero;
    std::size_t t = 0;
    while (t + 32 <= n) {
        // Byte counters saturate after 255 rounds; flush into 64-bit lanes before that.
        __m256i plus8 = zero;
        __m256i minus8 = zero;
        for (int round = 0; round < 255 && t + 32 <= n; ++round, t += 32) {
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + t));
            plus8 = _mm256_sub_epi8(plus8, _mm256_cmpeq_epi8(v, one));
            minus8 = _mm256_sub_epi8(minus8, _mm256_cmpeq_epi8(v, neg));
        }
        plus64 = _mm256_add_epi64(plus64, _mm256_sad_epu8(plus8, zero));
        minus64 = _mm256_add_epi64(minus64, _mm256_sad_epu8(minus8, zero));
    }

    SignCounts c = count_signs_scalar(values + t, n - t);
    c.plus += hsum_u64(plus64);
    c.minus += hsum_u64(minus64);
    c.zero = n - c.plus - c.minus;
    return c;
}

std::int64_t prefix_sum_avx2(const std::int8_t* values, std::int64_t* out, std::size_t n,
                             std::int64_t carry)
{
    __m256i running = _mm256_set1_epi64x(carry);
    const __m256i zero = _mm256_setzero_si256();
    std::size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        std::int32_t packed;
        __builtin_memcpy(&packed, values + t, sizeof packed);
        __m256i v = _mm256_cvtepi8_epi64(_mm_cvtsi32_si128(packed));
        // [a b c d] -> [a a+b b+c c+d] -> [a a+b a+b+c a+b+c+d]
        v = _mm256_add_epi64(v, _mm256_blend_epi32(_mm256_permute4x64_epi64(v, 0x90), zero, 0x03));
        v = _mm256_add_epi64(v, _mm256_blend_epi32(_mm256_permute4x64_epi64(v, 0x40), zero, 0x0F));
        v = _mm256_add_epi64(v, running);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + t), v);
        running = _mm256_permute4x64_epi64(v, 0xFF);
    }
    if (t > 0)
        carry = out[t - 1];
    return prefix_sum_scalar(values + t, out + t, n - t, carry);
}

// floor(n/d) through double division, then an exact one-step correction.
// With n < 2^40 and d < 2^31 the product q*d stays within n + d < 2^53, so the
// remainder is computed exactly; the lane accumulators stay below 2^46.
std::int64_t weighted_floor_sum_avx2(std::uint64_t numerator, const std::uint32_t* divisors,
                                     const std::int8_t* weights, std::size_t n)
{
    const __m256d num = _mm256_set1_pd(static_cast<double>(numerator));
    const __m256d zero = _mm256_setzero_pd();
    const __m256d unit = _mm256_set1_pd(1.0);
    __m256d acc0 = zero;
    __m256d acc1 = zero;

    std::size_t t = 0;
    auto step = [&](std::size_t at) {
        const __m256d d = _mm256_cvtepi32_pd(
            _mm_loadu_si128(reinterpret_cast<const __m128i*>(divisors + at)));
        std::int32_t packed;
        __builtin_memcpy(&packed, weights + at, sizeof packed);
        const __m256d w = _mm256_cvtepi32_pd(_mm_cvtepi8_epi32(_mm_cvtsi32_si128(packed)));

        __m256d q = _mm256_floor_pd(_mm256_div_pd(num, d));
        const __m256d r = _mm256_sub_pd(num, _mm256_mul_pd(q, d));
        q = _mm256_add_pd(q, _mm256_and_pd(_mm256_cmp_pd(r, d, _CMP_GE_OQ), unit));
        q = _mm256_sub_pd(q, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), unit));
        return _mm256_mul_pd(q, w);
    };
    for (; t + 8 <= n; t += 8) {
        acc0 = _mm256_add_pd(acc0, step(t));
        acc1 = _mm256_add_pd(acc1, step(t + 4));
    }
    for (; t + 4 <= n; t += 4)
        acc0 = _mm256_add_pd(acc0, step(t));

    const auto vector_part = static_cast<std::int64_t>(hsum_pd(_mm256_add_pd(acc0, acc1)));
    return vector_part + weighted_floor_sum_scalar(numerator, divisors + t, weights + t, n - t);
}

} // namespace moebius::kernels::detail

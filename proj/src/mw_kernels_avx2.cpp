// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).
//
// AVX2 variants of the enumerator kernels.  This translation unit is built
// with -mavx2; callers reach it only through the runtime dispatch.

#include "cubic/mw/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace cubic::mw {

namespace {

// 64x64 -> low 64 multiply from 32-bit halves (AVX2 has no 64-bit mullo)
inline __m256i mul64_lo(__m256i a, __m256i b) {
    __m256i a_lo = a;
    __m256i a_hi = _mm256_srli_epi64(a, 32);
    __m256i b_lo = b;
    __m256i b_hi = _mm256_srli_epi64(b, 32);
    __m256i lo_lo = _mm256_mul_epu32(a_lo, b_lo);
    __m256i lo_hi = _mm256_mul_epu32(a_lo, b_hi);
    __m256i hi_lo = _mm256_mul_epu32(a_hi, b_lo);
    __m256i cross = _mm256_add_epi64(lo_hi, hi_lo);
    return _mm256_add_epi64(lo_lo, _mm256_slli_epi64(cross, 32));
}

void cube_keys_avx2(std::int64_t a, const std::int64_t* x, std::size_t n, std::int64_t* out) {
    const __m256i va = _mm256_set1_epi64x(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i x2 = mul64_lo(vx, vx);
        __m256i x3 = mul64_lo(x2, vx);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), mul64_lo(va, x3));
    }
    for (; i < n; ++i) out[i] = a * x[i] * x[i] * x[i];
}

void add_offset_avx2(std::int64_t base, const std::int64_t* src, std::size_t n, std::int64_t* dst) {
    const __m256i vb = _mm256_set1_epi64x(base);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(vb, v));
    }
    for (; i < n; ++i) dst[i] = base + src[i];
}

std::size_t match_mask_avx2(std::int64_t base, const std::int64_t* src, std::size_t n,
                            std::uint64_t mask, std::uint64_t want, std::uint32_t* out_idx) {
    const __m256i vb = _mm256_set1_epi64x(base);
    const __m256i vm = _mm256_set1_epi64x(static_cast<std::int64_t>(mask));
    const __m256i vw = _mm256_set1_epi64x(static_cast<std::int64_t>(want));
    std::size_t k = 0, i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i key = _mm256_add_epi64(vb, v);
        __m256i hit = _mm256_cmpeq_epi64(_mm256_and_si256(key, vm), vw);
        int bits = _mm256_movemask_pd(_mm256_castsi256_pd(hit));
        while (bits) {
            int lane = __builtin_ctz(static_cast<unsigned>(bits));
            out_idx[k++] = static_cast<std::uint32_t>(i + static_cast<std::size_t>(lane));
            bits &= bits - 1;
        }
    }
    for (; i < n; ++i)
        if ((static_cast<std::uint64_t>(base + src[i]) & mask) == want)
            out_idx[k++] = static_cast<std::uint32_t>(i);
    return k;
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{cube_keys_avx2, add_offset_avx2, match_mask_avx2, "avx2"};
    return k;
}

} // namespace cubic::mw

#else

namespace cubic::mw {
const Kernels& avx2_kernels() { return scalar_kernels(); }
} // namespace cubic::mw

#endif

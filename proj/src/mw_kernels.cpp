// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/mw/kernels.hpp"

namespace cubic::mw {

namespace {

void cube_keys_scalar(std::int64_t a, const std::int64_t* x, std::size_t n, std::int64_t* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] * x[i] * x[i];
}

void add_offset_scalar(std::int64_t base, const std::int64_t* src, std::size_t n, std::int64_t* dst) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = base + src[i];
}

std::size_t match_mask_scalar(std::int64_t base, const std::int64_t* src, std::size_t n,
                              std::uint64_t mask, std::uint64_t want, std::uint32_t* out_idx) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        if ((static_cast<std::uint64_t>(base + src[i]) & mask) == want)
            out_idx[k++] = static_cast<std::uint32_t>(i);
    return k;
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{cube_keys_scalar, add_offset_scalar, match_mask_scalar, "scalar"};
    return k;
}

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Kernels& active_kernels() {
    static const Kernels& chosen = avx2_available() ? avx2_kernels() : scalar_kernels();
    return chosen;
}

} // namespace cubic::mw

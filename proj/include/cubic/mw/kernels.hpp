// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).
//
// Inner loops of the meet-in-the-middle enumerator: dense int64 key streams
// (a*x^3 cube tables, base+table key generation, shard-mask filtering).
// Scalar reference implementations live in mw_kernels.cpp; an AVX2 variant is
// compiled separately and selected at runtime.  Equivalence of the two is
// part of the test suite.

#pragma once

#include <cstddef>
#include <cstdint>

namespace cubic::mw {

struct Kernels {
    // out[i] = a * x[i]^3
    void (*cube_keys)(std::int64_t a, const std::int64_t* x, std::size_t n, std::int64_t* out);
    // dst[i] = base + src[i]
    void (*add_offset)(std::int64_t base, const std::int64_t* src, std::size_t n, std::int64_t* dst);
    // collect i with ((uint64)(base + src[i]) & mask) == want; returns count
    std::size_t (*match_mask)(std::int64_t base, const std::int64_t* src, std::size_t n,
                              std::uint64_t mask, std::uint64_t want, std::uint32_t* out_idx);
    const char* name;
};

const Kernels& scalar_kernels();
bool avx2_available();
const Kernels& avx2_kernels(); // valid only when avx2_available()
/// Runtime-selected implementation (AVX2 when the CPU has it).
const Kernels& active_kernels();

} // namespace cubic::mw

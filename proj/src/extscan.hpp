// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).
//
// Private helper: exhaustive singular-point scan for plane cubics over the
// small extensions F_{p^2}, F_{p^3}.  The singular subscheme of a reduced
// plane cubic has closed points of degree at most 3, so scanning k = 1, 2, 3
// decides smoothness over the algebraic closure exactly.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cubic/cubic_form.hpp"

namespace cubic::detail {

// Arithmetic in F_p[t]/(m(t)), m monic of degree k <= 3, coefficients mod p.
struct ExtCtx {
    std::uint32_t p;
    int k;
    std::array<std::uint32_t, 3> m; // m(t) = t^k + m[k-1] t^{k-1} + ... + m[0]
};

using ExtElem = std::array<std::uint32_t, 3>;

inline ExtElem ext_add(const ExtCtx& c, ExtElem a, const ExtElem& b) {
    for (int i = 0; i < c.k; ++i) a[i] = (a[i] + b[i]) % c.p;
    return a;
}

inline ExtElem ext_scale(const ExtCtx& c, ExtElem a, std::uint64_t s) {
    for (int i = 0; i < c.k; ++i) a[i] = static_cast<std::uint32_t>(a[i] * s % c.p);
    return a;
}

inline ExtElem ext_mul(const ExtCtx& c, const ExtElem& a, const ExtElem& b) {
    std::array<std::uint64_t, 5> t{};
    for (int i = 0; i < c.k; ++i)
        for (int j = 0; j < c.k; ++j) t[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    // reduce degrees k..2k-2 using t^k = -(m[k-1] t^{k-1} + ... + m[0])
    for (int d = 2 * c.k - 2; d >= c.k; --d) {
        std::uint64_t v = t[d] % c.p;
        if (!v) continue;
        t[d] = 0;
        for (int i = 0; i < c.k; ++i)
            t[d - c.k + i] += v * (c.p - c.m[i] % c.p);
    }
    ExtElem r{};
    for (int i = 0; i < c.k; ++i) r[i] = static_cast<std::uint32_t>(t[i] % c.p);
    return r;
}

inline bool ext_is_zero(const ExtCtx& c, const ExtElem& a) {
    for (int i = 0; i < c.k; ++i)
        if (a[i]) return false;
    return true;
}

/// Monic irreducible polynomial of degree k over F_p (k = 2 or 3: no roots).
ExtCtx make_ext(std::uint32_t p, int k);

/// Does the 3-variable form (coefficients already reduced mod p) have a point
/// of P^2(F_{p^k}) where the gradient vanishes?  Includes F = 0 implicitly
/// for char not dividing 3 via the Euler relation; F is checked explicitly.
bool has_singular_point_ext(const CubicForm& f3, int k);

} // namespace cubic::detail

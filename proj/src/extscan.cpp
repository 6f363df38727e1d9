// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "extscan.hpp"

namespace cubic::detail {

ExtCtx make_ext(std::uint32_t p, int k) {
    ExtCtx c{p, k, {0, 0, 0}};
    if (k == 1) return c;
    // scan constant/linear parts until the monic polynomial has no root
    for (std::uint32_t a0 = 0; a0 < p; ++a0)
        for (std::uint32_t a1 = 0; a1 < p; ++a1) {
            bool root = false;
            for (std::uint32_t x = 0; x < p && !root; ++x) {
                std::uint64_t v = a0 + static_cast<std::uint64_t>(a1) * x % p;
                std::uint64_t xx = static_cast<std::uint64_t>(x) * x % p;
                v += (k == 2) ? xx : xx * x % p;
                root = (v % p == 0);
            }
            if (!root) {
                c.m[0] = a0;
                c.m[1] = a1;
                return c;
            }
        }
    fail(Err::Internal, "no irreducible polynomial found");
}

namespace {

struct Term {
    std::array<int, 3> e;
    std::uint32_t coef;
};

std::vector<Term> reduce_terms(const CubicForm& f3, std::uint32_t p, int dvar) {
    // dvar < 0: the form itself; otherwise the partial derivative
    std::vector<Term> out;
    for (const auto& [m, c] : f3.coeffs()) {
        std::array<int, 3> e{m[0], m[1], m[2]};
        std::uint64_t coef = c.residue();
        if (dvar >= 0) {
            if (e[static_cast<size_t>(dvar)] == 0) continue;
            coef = coef * static_cast<std::uint64_t>(e[static_cast<size_t>(dvar)]) % p;
            --e[static_cast<size_t>(dvar)];
        }
        if (coef % p) out.push_back({e, static_cast<std::uint32_t>(coef % p)});
    }
    return out;
}

ExtElem eval_terms(const ExtCtx& c, const std::vector<Term>& ts, const std::array<ExtElem, 3>& z) {
    ExtElem acc{};
    for (const auto& t : ts) {
        ExtElem v{};
        v[0] = t.coef;
        for (int i = 0; i < 3; ++i)
            for (int e = 0; e < t.e[static_cast<size_t>(i)]; ++e) v = ext_mul(c, v, z[static_cast<size_t>(i)]);
        acc = ext_add(c, acc, v);
    }
    return acc;
}

} // namespace

bool has_singular_point_ext(const CubicForm& f3, int k) {
    const FieldDesc f = f3.field();
    if (!f.finite()) fail(Err::Unsupported, "extension scan needs a finite field");
    const std::uint32_t p = f.p;
    ExtCtx c = make_ext(p, k);

    auto F = reduce_terms(f3, p, -1);
    std::array<std::vector<Term>, 3> G{reduce_terms(f3, p, 0), reduce_terms(f3, p, 1),
                                       reduce_terms(f3, p, 2)};

    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;

    auto elem_of = [&](std::uint64_t idx) {
        ExtElem e{};
        for (int i = 0; i < k; ++i) {
            e[i] = static_cast<std::uint32_t>(idx % p);
            idx /= p;
        }
        return e;
    };
    ExtElem one{};
    one[0] = 1;
    ExtElem zero{};

    auto test = [&](const std::array<ExtElem, 3>& z) {
        if (!ext_is_zero(c, eval_terms(c, F, z))) return false;
        for (int i = 0; i < 3; ++i)
            if (!ext_is_zero(c, eval_terms(c, G[static_cast<size_t>(i)], z))) return false;
        return true;
    };

    // canonical representatives (1:a:b), (0:1:a), (0:0:1)
    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b)
            if (test({one, elem_of(a), elem_of(b)})) return true;
    for (std::uint64_t a = 0; a < q; ++a)
        if (test({zero, one, elem_of(a)})) return true;
    return test({zero, zero, one});
}

} // namespace cubic::detail

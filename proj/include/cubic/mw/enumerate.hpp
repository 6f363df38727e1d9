// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cubic/errors.hpp"

namespace cubic::mw {

using Coeffs = std::array<std::int64_t, 4>;
using Vec4 = std::array<std::int64_t, 4>;

enum class Norm { Sum, Max }; // h = sum |x_i| (A.6 default) or max |x_i| (A.3)

struct HeightPoint {
    Vec4 x;          // canonical: coprime integers, first nonzero positive
    std::int64_t h;  // height under the run's norm
    bool on_line;    // lies on a rational line of the surface
};

/// Rational lines of the diagonal surface as pairs of integer linear forms
/// (q*z_i + p*z_j = 0 with (p/q)^3 = a_j/a_i).
struct LinePattern {
    std::array<std::array<std::int64_t, 4>, 2> forms;
    bool contains(const Vec4& x) const {
        for (const auto& f : forms) {
            __int128 s = 0;
            for (int i = 0; i < 4; ++i) s += static_cast<__int128>(f[static_cast<size_t>(i)]) * x[static_cast<size_t>(i)];
            if (s != 0) return false;
        }
        return true;
    }
};

std::vector<LinePattern> rational_line_patterns(const Coeffs& a);

Vec4 canonical_vec4(Vec4 x); // gcd division + sign rule; ZeroVector on 0
std::int64_t height_of(const Vec4& x, Norm n);
bool on_surface(const Coeffs& a, const Vec4& x);

/// Brute-force four-loop enumerator (test oracle; feasible for small H).
std::vector<HeightPoint> naive_enumerate(const Coeffs& a, std::int64_t H, Norm norm);

/// Meet-in-the-middle hash-join enumerator; output is set-equal to the naive
/// scan.  Shards the left-pair table by key residue class when the memory
/// estimate exceeds the budget; MemoryBudgetExceeded when even 256 shards
/// do not fit (shard by residue class externally in that case).
std::vector<HeightPoint> meet_in_middle_enumerate(const Coeffs& a, std::int64_t H, Norm norm,
                                                  std::size_t mem_budget_bytes = std::size_t(1) << 31,
                                                  int threads = 1);

/// The production entry point (meet-in-the-middle behind the scenes):
/// all primitive solutions of sum a_i x_i^3 = 0 with h <= H, deduplicated by
/// canonical form, sorted by (height, lexicographic coordinates), line points
/// flagged.
std::vector<HeightPoint> enumerate_points(const Coeffs& a, std::int64_t H, Norm norm,
                                          std::size_t mem_budget_bytes = std::size_t(1) << 31,
                                          int threads = 1);

} // namespace cubic::mw

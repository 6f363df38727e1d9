// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/mw/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "cubic/mw/kernels.hpp"

namespace cubic::mw {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) std::swap(a %= b, b);
    return a;
}

std::int64_t icbrt(std::int64_t n) { // floor cube root for n >= 0
    std::int64_t r = static_cast<std::int64_t>(std::cbrt(static_cast<double>(n)));
    while (r > 0 && r * r * r > n) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

Vec4 canonical_vec4(Vec4 x) {
    std::int64_t g = 0;
    for (auto v : x) g = gcd64(g, v);
    if (g == 0) fail(Err::ZeroVector, "zero solution");
    int first = 0;
    while (x[static_cast<size_t>(first)] == 0) ++first;
    if (x[static_cast<size_t>(first)] < 0) g = -g;
    for (auto& v : x) v /= g;
    return x;
}

std::int64_t height_of(const Vec4& x, Norm n) {
    // saturating: coordinates may approach the int64 range on intermediate
    // points of the closure
    __int128 h = 0;
    for (auto v : x) {
        __int128 a = v < 0 ? -static_cast<__int128>(v) : static_cast<__int128>(v);
        h = n == Norm::Sum ? h + a : std::max(h, a);
    }
    const __int128 cap = std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(h > cap ? cap : h);
}

bool on_surface(const Coeffs& a, const Vec4& x) {
    __int128 s = 0;
    for (int i = 0; i < 4; ++i)
        s += static_cast<__int128>(a[static_cast<size_t>(i)]) * x[static_cast<size_t>(i)] *
             x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    return s == 0;
}

std::vector<LinePattern> rational_line_patterns(const Coeffs& a) {
    // z_i + c z_j = z_k + c' z_l = 0 with c^3 = a_j/a_i rational; as integer
    // forms: q z_i + p z_j = 0 where (p/q)^3 = a_j/a_i in lowest terms
    auto cube_root_ratio = [](std::int64_t num, std::int64_t den) -> std::optional<std::pair<std::int64_t, std::int64_t>> {
        // rational cube root of num/den (nonzero)
        std::int64_t g = gcd64(num, den);
        num /= g;
        den /= g;
        if (den < 0) { den = -den; num = -num; }
        std::int64_t pn = icbrt(num < 0 ? -num : num), pd = icbrt(den);
        if (pd * pd * pd != den) return std::nullopt;
        if (pn * pn * pn != (num < 0 ? -num : num)) return std::nullopt;
        return std::make_pair(num < 0 ? -pn : pn, pd);
    };
    std::vector<LinePattern> out;
    const std::array<std::array<int, 4>, 3> splits{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (const auto& sp : splits) {
        auto c1 = cube_root_ratio(a[static_cast<size_t>(sp[1])], a[static_cast<size_t>(sp[0])]);
        auto c2 = cube_root_ratio(a[static_cast<size_t>(sp[3])], a[static_cast<size_t>(sp[2])]);
        if (!c1 || !c2) continue;
        LinePattern lp{};
        lp.forms[0][static_cast<size_t>(sp[0])] = c1->second; // q z_i + p z_j
        lp.forms[0][static_cast<size_t>(sp[1])] = c1->first;
        lp.forms[1][static_cast<size_t>(sp[2])] = c2->second;
        lp.forms[1][static_cast<size_t>(sp[3])] = c2->first;
        out.push_back(lp);
    }
    return out;
}

namespace {

std::vector<HeightPoint> finalize(const Coeffs& a, Norm norm, std::vector<Vec4> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    auto patterns = rational_line_patterns(a);
    std::vector<HeightPoint> out;
    out.reserve(raw.size());
    for (const auto& x : raw) {
        HeightPoint hp{x, height_of(x, norm), false};
        for (const auto& lp : patterns) hp.on_line = hp.on_line || lp.contains(x);
        out.push_back(hp);
    }
    std::sort(out.begin(), out.end(), [](const HeightPoint& l, const HeightPoint& r) {
        return l.h != r.h ? l.h < r.h : l.x < r.x;
    });
    return out;
}

} // namespace

std::vector<HeightPoint> naive_enumerate(const Coeffs& a, std::int64_t H, Norm norm) {
    if (H < 1) fail(Err::InvalidConfig, "height bound must be >= 1");
    for (auto c : a)
        if (c == 0) fail(Err::InvalidConfig, "diagonal coefficients must be nonzero");
    std::vector<Vec4> raw;
    auto bound = [&](std::int64_t used) { return norm == Norm::Sum ? H - used : H; };
    for (std::int64_t x1 = -H; x1 <= H; ++x1) {
        std::int64_t b2 = bound(std::abs(x1));
        for (std::int64_t x2 = -b2; x2 <= b2; ++x2) {
            std::int64_t used2 = norm == Norm::Sum ? std::abs(x1) + std::abs(x2) : 0;
            std::int64_t b3 = bound(used2);
            for (std::int64_t x3 = -b3; x3 <= b3; ++x3) {
                std::int64_t used3 = norm == Norm::Sum ? used2 + std::abs(x3) : 0;
                std::int64_t b4 = bound(used3);
                for (std::int64_t x4 = -b4; x4 <= b4; ++x4) {
                    Vec4 x{x1, x2, x3, x4};
                    if (x == Vec4{0, 0, 0, 0}) continue;
                    if (!on_surface(a, x)) continue;
                    raw.push_back(canonical_vec4(x));
                }
            }
        }
    }
    return finalize(a, norm, std::move(raw));
}

namespace {

struct LeftEntry {
    std::int64_t key;
    std::int32_t x1, x2;
    bool operator<(const LeftEntry& o) const { return key < o.key; }
};

// pair loop bounds per norm
struct PairRange {
    std::int64_t H;
    Norm norm;
    std::int64_t second_bound(std::int64_t first_abs) const {
        return norm == Norm::Sum ? H - first_abs : H;
    }
};

} // namespace

std::vector<HeightPoint> meet_in_middle_enumerate(const Coeffs& a, std::int64_t H, Norm norm,
                                                  std::size_t mem_budget_bytes, int threads) {
    if (H < 1) fail(Err::InvalidConfig, "height bound must be >= 1");
    for (auto c : a)
        if (c == 0) fail(Err::InvalidConfig, "diagonal coefficients must be nonzero");
    // overflow guard: |a_i| * H^3 * 2 must fit int64
    {
        __int128 worst = 0;
        for (auto c : a) worst = std::max(worst, static_cast<__int128>(c < 0 ? -c : c));
        worst *= static_cast<__int128>(H) * H * H * 2;
        if (worst > static_cast<__int128>(std::numeric_limits<std::int64_t>::max()))
            fail(Err::Unsupported, "height bound overflows 64-bit keys");
    }

    const Kernels& K = active_kernels();
    const std::size_t width = static_cast<std::size_t>(2 * H + 1);
    // cube tables t_i[x + H] = a_i * x^3
    std::array<std::vector<std::int64_t>, 4> tab;
    {
        std::vector<std::int64_t> xs(width);
        std::iota(xs.begin(), xs.end(), -H);
        for (int i = 0; i < 4; ++i) {
            tab[static_cast<size_t>(i)].resize(width);
            K.cube_keys(a[static_cast<size_t>(i)], xs.data(), width, tab[static_cast<size_t>(i)].data());
        }
    }

    // left-pair count estimate -> shard count (power of two)
    const double pairs_est = norm == Norm::Sum ? 2.0 * static_cast<double>(H) * static_cast<double>(H)
                                               : static_cast<double>(width) * static_cast<double>(width);
    std::size_t shards = 1;
    while (shards < 256 && pairs_est * sizeof(LeftEntry) / static_cast<double>(shards) >
                               static_cast<double>(mem_budget_bytes))
        shards *= 2;
    if (pairs_est * sizeof(LeftEntry) / static_cast<double>(shards) > static_cast<double>(mem_budget_bytes))
        fail(Err::MemoryBudgetExceeded,
             "left table exceeds the memory budget even with 256 shards; shard by residue class "
             "externally or raise the budget");
    const std::uint64_t mask = static_cast<std::uint64_t>(shards - 1);

    PairRange pr{H, norm};
    std::vector<Vec4> raw;
    std::vector<std::uint32_t> idxbuf(width);
    std::vector<LeftEntry> left;
    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        left.clear();
        for (std::int64_t x1 = -H; x1 <= H; ++x1) {
            std::int64_t b = pr.second_bound(std::abs(x1));
            const std::int64_t* src = tab[1].data() + (H - b);
            std::size_t n = static_cast<std::size_t>(2 * b + 1);
            std::size_t hits = K.match_mask(tab[0][static_cast<size_t>(x1 + H)], src, n, mask, shard,
                                            idxbuf.data());
            for (std::size_t k = 0; k < hits; ++k) {
                std::int64_t x2 = static_cast<std::int64_t>(idxbuf[k]) - b;
                left.push_back({tab[0][static_cast<size_t>(x1 + H)] + tab[1][static_cast<size_t>(x2 + H)],
                                static_cast<std::int32_t>(x1), static_cast<std::int32_t>(x2)});
            }
        }
        std::sort(left.begin(), left.end());
        // probe with right pairs; x3 stripes split across workers, results
        // merged in worker order (finalize re-sorts, so the output is
        // order-independent)
        const int nthreads = std::max(1, threads);
        std::vector<std::vector<Vec4>> found(static_cast<size_t>(nthreads));
        auto probe = [&](int tid) {
            std::vector<std::uint32_t> buf(width);
            // (-(t3+t4)) & mask == shard  <=>  (t3+t4) & mask == ((0-shard) & mask)
            const std::uint64_t want = (0 - shard) & mask;
            for (std::int64_t x3 = -H + tid; x3 <= H; x3 += nthreads) {
                std::int64_t b = pr.second_bound(std::abs(x3));
                const std::int64_t* src = tab[3].data() + (H - b);
                std::size_t n = static_cast<std::size_t>(2 * b + 1);
                std::size_t hits = K.match_mask(tab[2][static_cast<size_t>(x3 + H)], src, n, mask, want,
                                                buf.data());
                for (std::size_t k = 0; k < hits; ++k) {
                    std::int64_t x4 = static_cast<std::int64_t>(buf[k]) - b;
                    std::int64_t key =
                        -(tab[2][static_cast<size_t>(x3 + H)] + tab[3][static_cast<size_t>(x4 + H)]);
                    auto [lo, hi] = std::equal_range(left.begin(), left.end(), LeftEntry{key, 0, 0});
                    for (auto it = lo; it != hi; ++it) {
                        Vec4 x{it->x1, it->x2, x3, x4};
                        if (x == Vec4{0, 0, 0, 0}) continue;
                        if (norm == Norm::Sum && std::abs(static_cast<std::int64_t>(it->x1)) +
                                                         std::abs(static_cast<std::int64_t>(it->x2)) +
                                                         std::abs(x3) + std::abs(x4) >
                                                     H)
                            continue;
                        found[static_cast<size_t>(tid)].push_back(canonical_vec4(x));
                    }
                }
            }
        };
        if (nthreads == 1) {
            probe(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(probe, t);
            for (auto& th : pool) th.join();
        }
        for (auto& f : found) raw.insert(raw.end(), f.begin(), f.end());
    }
    return finalize(a, norm, std::move(raw));
}

std::vector<HeightPoint> enumerate_points(const Coeffs& a, std::int64_t H, Norm norm,
                                          std::size_t mem_budget_bytes, int threads) {
    return meet_in_middle_enumerate(a, H, norm, mem_budget_bytes, threads);
}

} // namespace cubic::mw

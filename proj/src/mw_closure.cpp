// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/mw/closure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cubic::mw {

PointList::PointList(Coeffs a, std::int64_t bound, Norm norm, std::vector<HeightPoint> pts)
    : a_(a), bound_(bound), norm_(norm), pts_(std::move(pts)) {
    for (int i = 0; i < size(); ++i) index_.emplace(pts_[static_cast<size_t>(i)].x, i);
}

PointList PointList::build(const Coeffs& a, std::int64_t H, Norm norm, std::size_t mem_budget,
                           int threads) {
    return PointList(a, H, norm, enumerate_points(a, H, norm, mem_budget, threads));
}

std::optional<int> PointList::index_of(const Vec4& canonical) const {
    auto it = index_.find(canonical);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

StrongResult strong_compose(const Coeffs& a, const Vec4& p, const Vec4& q) {
    // F(λp + μq) = 3λμ(Aλ + Bμ) on the surface, so the residual point is
    // B·p − A·q with A = Σ a_i p_i² q_i, B = Σ a_i p_i q_i².
    __int128 A = 0, B = 0;
    for (int i = 0; i < 4; ++i) {
        const auto ai = static_cast<__int128>(a[static_cast<size_t>(i)]);
        const auto pi = static_cast<__int128>(p[static_cast<size_t>(i)]);
        const auto qi = static_cast<__int128>(q[static_cast<size_t>(i)]);
        A += ai * pi * pi * qi;
        B += ai * pi * qi * qi;
    }
    if (A == 0 && B == 0) return {true, {}, 0};
    std::array<__int128, 4> r;
    __int128 g = 0;
    auto abs128 = [](__int128 v) { return v < 0 ? -v : v; };
    for (int i = 0; i < 4; ++i) {
        r[static_cast<size_t>(i)] = B * p[static_cast<size_t>(i)] - A * q[static_cast<size_t>(i)];
        __int128 x = abs128(r[static_cast<size_t>(i)]), y = abs128(g);
        while (x) std::swap(y %= x, x);
        g = y;
    }
    if (g == 0) fail(Err::Internal, "residual point vanished");
    int first = 0;
    while (r[static_cast<size_t>(first)] == 0) ++first;
    if (r[static_cast<size_t>(first)] < 0) g = -g;
    StrongResult out;
    for (int i = 0; i < 4; ++i) {
        __int128 v = r[static_cast<size_t>(i)] / g;
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
            out.overflow = true;
            return out;
        }
        out.point[static_cast<size_t>(i)] = static_cast<std::int64_t>(v);
    }
    return out;
}

namespace {

bool on_chord(const Vec4& P, const Vec4& Q, const Vec4& Y) {
    for (int i1 = 0; i1 < 4; ++i1)
        for (int i2 = i1 + 1; i2 < 4; ++i2)
            for (int i3 = i2 + 1; i3 < 4; ++i3) {
                __int128 d = 0;
                d += static_cast<__int128>(P[static_cast<size_t>(i1)]) *
                     (static_cast<__int128>(Q[static_cast<size_t>(i2)]) * Y[static_cast<size_t>(i3)] -
                      static_cast<__int128>(Q[static_cast<size_t>(i3)]) * Y[static_cast<size_t>(i2)]);
                d -= static_cast<__int128>(P[static_cast<size_t>(i2)]) *
                     (static_cast<__int128>(Q[static_cast<size_t>(i1)]) * Y[static_cast<size_t>(i3)] -
                      static_cast<__int128>(Q[static_cast<size_t>(i3)]) * Y[static_cast<size_t>(i1)]);
                d += static_cast<__int128>(P[static_cast<size_t>(i3)]) *
                     (static_cast<__int128>(Q[static_cast<size_t>(i1)]) * Y[static_cast<size_t>(i2)] -
                      static_cast<__int128>(Q[static_cast<size_t>(i2)]) * Y[static_cast<size_t>(i1)]);
                if (d != 0) return false;
            }
    return true;
}

bool on_tangent_section(const Coeffs& a, const Vec4& P, const Vec4& Y) {
    __int128 s = 0;
    for (int i = 0; i < 4; ++i)
        s += static_cast<__int128>(a[static_cast<size_t>(i)]) * P[static_cast<size_t>(i)] *
             P[static_cast<size_t>(i)] * Y[static_cast<size_t>(i)];
    return s == 0;
}

} // namespace

std::vector<int> weak_compose(const PointList& list, int p, int q) {
    const Coeffs& a = list.coeffs();
    const Vec4 &P = list[p].x, &Q = list[q].x;
    std::vector<int> out;
    if (p == q) {
        for (int i = 0; i < list.size(); ++i)
            if (on_tangent_section(a, P, list[i].x)) out.push_back(i);
        return out;
    }
    StrongResult r = strong_compose(a, P, Q);
    if (r.line_in_surface) {
        for (int i = 0; i < list.size(); ++i)
            if (on_chord(P, Q, list[i].x)) out.push_back(i);
        return out;
    }
    if (r.overflow) return out;
    if (height_of(r.point, list.norm()) <= list.bound()) {
        auto idx = list.index_of(r.point);
        if (!idx) fail(Err::Internal, "in-range composition missing from the list");
        out.push_back(*idx);
    }
    return out;
}

RunReport weak_closure(const PointList& list, const std::vector<int>& gen, int max_word_len,
                       long long max_compositions, std::int64_t intermediate_factor,
                       int max_extra_states) {
    const int n = list.size();
    const Coeffs a = list.coeffs();
    const std::int64_t icap = list.bound() * std::max<std::int64_t>(1, intermediate_factor);
    RunReport rep;
    rep.surface = a;
    rep.bound = list.bound();
    rep.norm = list.norm();
    rep.gen = gen;
    rep.records.assign(static_cast<size_t>(n), GenerationRecord{});

    // state registry: 0..n-1 are list points; out-of-list intermediates follow
    std::vector<Vec4> coords;
    coords.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) coords.push_back(list[i].x);
    std::map<Vec4, int> state_of;
    for (int i = 0; i < n; ++i) state_of.emplace(coords[static_cast<size_t>(i)], i);

    std::vector<std::vector<int>> frontier(static_cast<size_t>(max_word_len) + 1);
    auto reach = [&](int idx, int len, int l, int r) {
        if (static_cast<std::size_t>(idx) >= rep.records.size())
            rep.records.resize(static_cast<size_t>(idx) + 1, GenerationRecord{});
        auto& rec = rep.records[static_cast<size_t>(idx)];
        if (rec.point >= 0) return;
        rec.point = idx;
        rec.left = l;
        rec.right = r;
        rec.word_length = len;
        rec.max_intermediate_height = height_of(coords[static_cast<size_t>(idx)], list.norm());
        if (l >= 0)
            rec.max_intermediate_height =
                std::max({rec.max_intermediate_height,
                          rep.records[static_cast<size_t>(l)].max_intermediate_height,
                          rep.records[static_cast<size_t>(r)].max_intermediate_height});
        if (len < max_word_len || (len == max_word_len))
            if (len <= max_word_len) frontier[static_cast<size_t>(len)].push_back(idx);
    };
    for (int g : gen) {
        if (g < 0 || g >= n) fail(Err::InvalidConfig, "generator outside the list");
        reach(g, 1, -1, -1);
    }

    int extra_states = 0;
    auto state_for = [&](const Vec4& x) -> int {
        auto it = state_of.find(x);
        if (it != state_of.end()) return it->second;
        if (extra_states >= max_extra_states) return -1;
        int id = static_cast<int>(coords.size());
        coords.push_back(x);
        state_of.emplace(x, id);
        ++extra_states;
        return id;
    };

    auto compose_states = [&](int si, int sj, int total) {
        const Vec4 &P = coords[static_cast<size_t>(si)], &Q = coords[static_cast<size_t>(sj)];
        const bool pi_in = si < n, qi_in = sj < n;
        if (si == sj) {
            // tangent section; only list points are enumerable
            for (int i = 0; i < n; ++i)
                if (on_tangent_section(a, P, list[i].x)) reach(i, total, si, sj);
            return;
        }
        StrongResult r = strong_compose(a, P, Q);
        if (r.line_in_surface) {
            for (int i = 0; i < n; ++i)
                if (on_chord(P, Q, list[i].x)) reach(i, total, si, sj);
            return;
        }
        if (r.overflow) return;
        std::int64_t h = height_of(r.point, list.norm());
        if (h <= list.bound()) {
            auto idx = list.index_of(r.point);
            if (!idx) fail(Err::Internal, "in-range composition missing from the list");
            reach(*idx, total, si, sj);
        } else if (h <= icap && (pi_in || qi_in)) {
            // out-of-list intermediates are kept (exactly) one hop at a time
            int id = state_for(r.point);
            if (id >= 0) reach(id, total, si, sj);
        }
    };

    for (int total = 2; total <= max_word_len && !rep.budget_exhausted; ++total) {
        for (int la = 1; la <= total / 2 && !rep.budget_exhausted; ++la) {
            int lb = total - la;
            // frontiers may grow while composing; index loops stay valid
            for (size_t i = 0; i < frontier[static_cast<size_t>(la)].size() && !rep.budget_exhausted; ++i) {
                size_t j0 = la == lb ? i : 0;
                for (size_t j = j0; j < frontier[static_cast<size_t>(lb)].size(); ++j) {
                    if (++rep.compositions > max_compositions) {
                        rep.budget_exhausted = true;
                        break;
                    }
                    compose_states(frontier[static_cast<size_t>(la)][i], frontier[static_cast<size_t>(lb)][j], total);
                }
            }
        }
    }

    bool prefix = true;
    for (int i = 0; i < n; ++i) {
        const bool generated = rep.records[static_cast<size_t>(i)].point >= 0;
        if (prefix && !generated && !list[i].on_line) {
            prefix = false;
            rep.h_bad = list[i].h;
        }
        if (prefix && generated) {
            ++rep.nr_all;
            if (!list[i].on_line) ++rep.nr;
            rep.max_word_length = std::max(rep.max_word_length, rep.records[static_cast<size_t>(i)].word_length);
        }
    }
    rep.descent_table = descent_stats(list);
    for (int d = 1; d <= 10; ++d) {
        std::int64_t h = list.bound() * d / 10;
        long long c = 0;
        for (int i = 0; i < n; ++i)
            if (!list[i].on_line && list[i].h <= h) ++c;
        rep.count_table.push_back({h, c});
    }
    return rep;
}

std::vector<std::pair<std::int64_t, double>> descent_stats(const PointList& list) {
    const int n = list.size();
    std::vector<char> descendable(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (list[i].on_line) continue;
        for (int j = 0; j < n && !descendable[static_cast<size_t>(i)]; ++j) {
            if (list[j].h >= list[i].h || i == j) continue;
            StrongResult r = strong_compose(list.coeffs(), list[j].x, list[i].x);
            if (r.line_in_surface || r.overflow) continue;
            if (r.point == list[j].x) continue; // q∘r with r = q is not a strong pair
            if (height_of(r.point, list.norm()) < list[i].h) descendable[static_cast<size_t>(i)] = 1;
        }
    }
    std::vector<std::pair<std::int64_t, double>> table;
    for (int d = 1; d <= 10; ++d) {
        std::int64_t h = list.bound() * d / 10;
        long long total = 0, good = 0;
        for (int i = 0; i < n; ++i) {
            if (list[i].on_line || list[i].h > h) continue;
            ++total;
            good += descendable[static_cast<size_t>(i)];
        }
        table.push_back({h, total ? static_cast<double>(good) / static_cast<double>(total) : 0.0});
    }
    return table;
}

CountFit count_fit(const PointList& list, int picard_rank, bool curve_model,
                   std::vector<std::int64_t> ladder) {
    CountFit fit;
    fit.picard_rank = picard_rank;
    fit.curve_model = curve_model;
    long long off_line = 0;
    for (int i = 0; i < list.size(); ++i) off_line += !list[i].on_line;
    if (off_line < 100) fail(Err::InsufficientData, "need at least 100 points for a fit");
    if (ladder.empty())
        for (std::int64_t h = list.bound(); h >= 16 && ladder.size() < 6; h /= 2) ladder.push_back(h);
    std::sort(ladder.begin(), ladder.end());
    fit.ladder = ladder;
    for (auto h : ladder) {
        long long c = 0;
        for (int i = 0; i < list.size(); ++i)
            if (!list[i].on_line && list[i].h <= h) ++c;
        fit.counts.push_back(c);
        double model = curve_model
                           ? std::pow(std::log(static_cast<double>(h)), static_cast<double>(picard_rank) / 2.0)
                           : static_cast<double>(h) * std::pow(std::log(static_cast<double>(h)),
                                                               static_cast<double>(picard_rank - 1));
        fit.ratios.push_back(static_cast<double>(c) / model);
    }
    double sum = 0, mx = 0, mn = std::numeric_limits<double>::max();
    for (double r : fit.ratios) {
        sum += r;
        mx = std::max(mx, r);
        mn = std::min(mn, r);
    }
    fit.fitted_constant = sum / static_cast<double>(fit.ratios.size());
    fit.max_over_min = mn > 0 ? mx / mn : std::numeric_limits<double>::infinity();
    for (double r : fit.ratios) fit.max_residual = std::max(fit.max_residual, std::fabs(r - fit.fitted_constant));
    return fit;
}

} // namespace cubic::mw

// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <map>
#include <optional>
#include <string>

#include "cubic/mw/enumerate.hpp"

namespace cubic::mw {

/// Height-ordered point list with O(log n) canonical lookup.
class PointList {
public:
    PointList(Coeffs a, std::int64_t bound, Norm norm, std::vector<HeightPoint> pts);

    static PointList build(const Coeffs& a, std::int64_t H, Norm norm,
                           std::size_t mem_budget = std::size_t(1) << 31, int threads = 1);

    const Coeffs& coeffs() const { return a_; }
    std::int64_t bound() const { return bound_; }
    Norm norm() const { return norm_; }
    int size() const { return static_cast<int>(pts_.size()); }
    const HeightPoint& operator[](int i) const { return pts_[static_cast<size_t>(i)]; }
    const std::vector<HeightPoint>& points() const { return pts_; }
    std::optional<int> index_of(const Vec4& canonical) const;

private:
    Coeffs a_;
    std::int64_t bound_;
    Norm norm_;
    std::vector<HeightPoint> pts_;
    std::map<Vec4, int> index_;
};

/// Strong composition of two distinct list points: the unique residual point
/// of the chord, nullopt when the chord lies inside the surface.  The result
/// is reported even when its height exceeds the list bound.
struct StrongResult {
    bool line_in_surface = false;
    bool overflow = false; // residual point exceeds 64-bit coordinates
    Vec4 point{};          // canonical; valid when !line_in_surface && !overflow
};
StrongResult strong_compose(const Coeffs& a, const Vec4& p, const Vec4& q);

/// Weak composition per A.1(b), confined to the list: p != q off a line gives
/// {p∘q} when in range (possibly empty); a chord inside the surface gives
/// all list points on that line; p == q gives all list points on the tangent
/// plane section at p.
std::vector<int> weak_compose(const PointList& list, int p, int q);

/// Witness for one reached state.  States 0..list.size()-1 are list points;
/// larger ids are exact out-of-list intermediates (heights above the list
/// bound but within the intermediate cap), reachable through strong
/// compositions only.
struct GenerationRecord {
    int point = -1;
    int left = -1, right = -1; // -1,-1 for generators
    int word_length = 1;       // leaf count
    std::int64_t max_intermediate_height = 0;
};

struct RunReport {
    Coeffs surface{};
    std::int64_t bound = 0;
    Norm norm = Norm::Sum;
    std::vector<int> gen;            // generator indices
    long long nr = 0;                // off-line points in the fully generated prefix
    long long nr_all = 0;            // same, counting line points
    std::int64_t h_bad = -1;         // height of the first ungenerated off-line point (-1: none)
    int max_word_length = 0;         // L over the generated prefix
    bool budget_exhausted = false;
    long long compositions = 0;
    std::vector<GenerationRecord> records; // per list index; point == -1 if unreached
    std::vector<std::pair<std::int64_t, double>> descent_table; // (H, cumulative d)
    std::vector<std::pair<std::int64_t, long long>> count_table; // (H, N(H) off-line)
};

/// Breadth-first weak closure by word length with deterministic pair order;
/// shortest witnessing words recorded at first discovery.  Strong
/// compositions may pass through exact out-of-list intermediates up to
/// intermediate_factor * bound (at most max_extra_states of them); tangent
/// sections and chords inside the surface expand to list points only, since
/// only those are enumerable.
RunReport weak_closure(const PointList& list, const std::vector<int>& gen, int max_word_len = 13,
                       long long max_compositions = 200000000,
                       std::int64_t intermediate_factor = 10, int max_extra_states = 300000);

/// One-step descent per A.7: p = q∘r with h(q), h(r) < h(p), strong
/// compositions only; cumulative fraction of descendable off-line points per
/// height decile.
std::vector<std::pair<std::int64_t, double>> descent_stats(const PointList& list);

struct CountFit {
    int picard_rank = 1;
    bool curve_model = false; // surface: H (log H)^{r-1}; curve: (log H)^{r/2}
    std::vector<std::int64_t> ladder;
    std::vector<long long> counts;     // N(H), off-line points
    std::vector<double> ratios;        // N(H) / model(H)
    double fitted_constant = 0;        // least-squares constant
    double max_over_min = 0;           // ratio stability diagnostic
    double max_residual = 0;
};

/// Least-squares constant fit of N(H) against the conjectural growth model
/// over a geometric ladder of heights.  InsufficientData below 100 points.
CountFit count_fit(const PointList& list, int picard_rank, bool curve_model = false,
                   std::vector<std::int64_t> ladder = {});

} // namespace cubic::mw

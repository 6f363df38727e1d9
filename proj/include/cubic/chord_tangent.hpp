// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <cstdint>
#include <functional>

#include "cubic/classify.hpp"

namespace cubic {

/// Result of composing two points through the collinearity relation.
struct CollinearOutcome {
    enum class Kind { Unique, LineInSurface, TangentSection, Undefined };
    Kind kind = Kind::Undefined;
    std::optional<ProjectivePoint> point;   // Unique: the residual point
    std::optional<ProjectiveLine> line;     // LineInSurface
    std::optional<PlaneCubicCurve> section; // TangentSection (whole curve, by design)
    /// Intersection cycle with multiplicities (Unique case): sums to degree 3.
    std::vector<std::pair<ProjectivePoint, int>> cycle;
};

/// Chord-tangent composition on a plane cubic; points in chart coordinates.
/// p == q composes via the tangent line at p.  Errors: NotOnCurve,
/// SingularInput.  A line inside (a reducible) C yields LineInSurface.
CollinearOutcome third_point_on_curve(const PlaneCubicCurve& C, const ProjectivePoint& p,
                                      const ProjectivePoint& q);

/// Composition on a cubic surface: Unique third point, LineInSurface when the
/// chord lies inside V, TangentSection for p == q.  Errors: NotOnSurface,
/// SingularPoint.
CollinearOutcome compose_on_surface(const CubicSurface& V, const ProjectivePoint& p,
                                    const ProjectivePoint& q);

/// Finite symmetric-quasigroup view: a carrier with a (possibly partial)
/// composition table.  table[i][j] == -1 marks an undefined composition.
class QuasigroupView {
public:
    static QuasigroupView from_curve(const PlaneCubicCurve& C); // smooth F_p-points
    static QuasigroupView from_table(std::vector<std::vector<int>> table);

    int size() const { return static_cast<int>(table_.size()); }
    int compose(int i, int j) const { return table_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    bool total() const;
    const std::vector<ProjectivePoint>& carrier() const { return carrier_; } // empty if abstract
    const std::optional<FieldDesc>& field() const { return field_; }

    /// Eq. (1.2) laws: commutativity and p∘(p∘q) = q wherever defined.
    bool satisfies_quasigroup_laws(std::string* witness = nullptr) const;

private:
    std::vector<ProjectivePoint> carrier_;
    std::vector<std::vector<int>> table_;
    std::optional<FieldDesc> field_;
};

/// The involution t_p : q -> p∘q as a permutation of the carrier.
/// PartialLaw if any composition with p is undefined.
std::vector<int> translation_involution(const QuasigroupView& S, int p);

struct AbelianReport {
    bool pass = true;
    bool exhaustive = true;
    long long triples_checked = 0;
    long long triples_total = 0;
    std::uint64_t seed = 0; // sampling seed when not exhaustive
    std::optional<std::array<int, 3>> violation;
};

/// (t_p t_q t_r)^2 = 1 over all triples (exhaustive below 10^4 triples or
/// when forced), else deterministic seeded sampling.
AbelianReport check_abelian(const QuasigroupView& S, bool exhaustive);

struct GroupAnalysis {
    long order = 0;
    bool cyclic = false;
    long exponent = 0;
    std::string structure; // "K*", "K+", "NonsplitTorus", "CyclicOfOrder(n)", "Other"
    int generator_witness = -1; // index of a maximal-order element
    std::vector<long> element_orders;
};

/// Builds the abelian group pq := u∘(p∘q), verifies the axioms exhaustively
/// and identifies the structure relative to the carrier's prime field.
/// Errors: NotAbelian (propagates a failed abelianness check), PartialLaw.
GroupAnalysis group_law(const QuasigroupView& S, int u);

} // namespace cubic

// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include "cubic/cubic_form.hpp"

namespace cubic {

enum class CurveTag {
    Smooth,
    Multiplicative,        // split node: two rational tangent directions
    Additive,              // cusp: one rational tangent direction, multiplicity two
    TwistedMultiplicative, // node with conjugate tangents (char != 2)
    TwistedAdditive,       // labeling only; char-2 group realization is out of scope
    Reducible,
    MultipleSingular,
    Unknown, // explicit "could not certify" status, never a wrong tag
};

const char* curve_tag_name(CurveTag t);

struct CurveType {
    CurveTag tag = CurveTag::Unknown;
    std::optional<ProjectivePoint> singular_point; // chart coordinates of the curve's plane
    std::vector<ProjectivePoint> tangent_dirs;     // points on the tangent cone, chart coordinates
    std::string note;
};

enum class Smoothness { Smooth, Singular, Indeterminate };

/// Sound smoothness-over-the-closure certificate for plane cubics: Macaulay
/// determinant of the partials, exhaustive extension scan as exact fallback
/// over F_p (p <= 13), good-reduction certificate over Q.
Smoothness smoothness_over_closure(const CubicForm& f3);

/// All K-rational singular points (gradient and form vanish), complete for
/// the rational locus.  Over Q uses resultant elimination on the partials.
std::vector<ProjectivePoint> rational_singular_points(const CubicForm& f3);

/// Determinant of the degree-4 Macaulay matrix of the three partial quadrics;
/// nonzero implies no common zero over the closure.
FieldElem macaulay_det3(const CubicForm& f3);

/// Degree-2 and degree-3 parts of the curve at a singular point, in a chart
/// moving the point to (0:0:1): the tangent cone and the boundary cubic.
struct LocalExpansion {
    BinaryForm cone;  // degree 2 in the chart directions (u, v)
    BinaryForm cubic; // degree 3
    std::vector<ProjectivePoint> dirs_basis; // two chart points spanning directions
};
LocalExpansion local_expansion(const CubicForm& f3, const ProjectivePoint& s);

/// Multiplicative / additive / twisted / reducible classification per the
/// tangent-cone split at the unique rational singular point; Smooth when the
/// closure certificate passes; Unknown when nothing can be certified.
/// UnsupportedField for char-2 twisted cases.
CurveType classify_curve(const PlaneCubicCurve& C,
                         const std::optional<ProjectivePoint>& singular_hint = std::nullopt);

/// Type of the tangent section at a smooth point of a diagonal surface via
/// the discriminant product D = prod a_i z_i, cross-validated against
/// classify_curve(tangent_section).  Errors: NotDiagonal, SingularPoint,
/// NotOnSurface.
CurveType diagonal_point_type(const CubicSurface& V, const ProjectivePoint& p);

/// K-rational lines fully contained in the surface.  Exhaustive over F_p;
/// coordinate-pairing families for diagonal forms over Q; Unsupported
/// otherwise.
std::vector<ProjectiveLine> lines_on_surface(const CubicSurface& V);

/// Rational singular points of the surface (brute force; finite field only).
std::vector<ProjectivePoint> surface_singular_points(const CubicSurface& V);

} // namespace cubic

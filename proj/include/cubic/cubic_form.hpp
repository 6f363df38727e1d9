// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <array>
#include <map>
#include <optional>

#include "cubic/poly.hpp"
#include "cubic/projective.hpp"

namespace cubic {

/// Exponent multi-index of a degree-3 monomial; unused variables carry 0.
using Monomial = std::array<int, 4>;

/// Homogeneous cubic form in 3 or 4 variables, sparse coefficient table.
class CubicForm {
public:
    CubicForm(int nvars, const FieldDesc& f);

    static CubicForm diagonal(const std::array<FieldElem, 4>& a);
    /// Parse "z1^2*z2 - 3*z3^3"-style text (also accepts the JSON map form via io).
    static CubicForm parse(const std::string& s, int nvars, const FieldDesc& f);

    int nvars() const { return nvars_; }
    const FieldDesc& field() const { return f_; }
    bool is_zero() const { return c_.empty(); }

    FieldElem coeff(const Monomial& m) const;
    void set_coeff(const Monomial& m, const FieldElem& v);
    void add_coeff(const Monomial& m, const FieldElem& v);
    const std::map<Monomial, FieldElem>& coeffs() const { return c_; }

    FieldElem evaluate(const ProjectivePoint& p) const; // at canonical coordinates
    FieldElem evaluate_raw(const Vec& z) const;
    Vec gradient(const ProjectivePoint& p) const;
    Vec gradient_raw(const Vec& z) const;

    /// F(B*u) for the linear substitution z_r = sum_j B[r][j] * u_j;
    /// cols[j] is the j-th column (an n-vector), giving a form in |cols| variables.
    CubicForm substitute(const std::vector<Vec>& cols) const;

    /// Restriction to the line (λ:μ) -> λ*a + μ*b as a binary cubic.
    BinaryForm restrict_to_line(const ProjectivePoint& a, const ProjectivePoint& b) const;

    CubicForm scaled(const FieldElem& s) const;
    bool proportional_to(const CubicForm& o) const;

    std::string str() const;

private:
    int nvars_;
    FieldDesc f_;
    std::map<Monomial, FieldElem> c_; // nonzero coefficients only
};

/// Plane section of a surface (or a self-standing plane cubic).  The chart
/// basis identifies the curve's plane with coordinates (z1:z2:z3): chart
/// point (u1:u2:u3) sits at u1*b1 + u2*b2 + u3*b3 in the ambient space.
struct PlaneCubicCurve {
    std::optional<ProjectivePlane> ambient_plane;
    std::vector<ProjectivePoint> chart_basis; // 3 points; empty for plain P^2 curves
    CubicForm form;                           // 3 variables

    const FieldDesc& field() const { return form.field(); }
    bool embedded() const { return ambient_plane.has_value(); }
    ProjectivePoint to_ambient(const ProjectivePoint& chart_pt) const;
    ProjectivePoint to_chart(const ProjectivePoint& ambient_pt) const;

    static PlaneCubicCurve plain(CubicForm f3); // curve in P^2 itself
};

struct CubicSurface {
    CubicForm form; // 4 variables
    std::optional<std::array<FieldElem, 4>> diagonal_coeffs;

    const FieldDesc& field() const { return form.field(); }
    static CubicSurface diagonal(const std::array<FieldElem, 4>& a);
    static CubicSurface general(CubicForm f4);
};

FieldElem evaluate(const CubicForm& F, const ProjectivePoint& p);
Vec gradient(const CubicForm& F, const ProjectivePoint& p);

/// Tangent plane at a smooth point of the surface (gradient coefficients,
/// canonicalized).  SingularPoint / NotOnSurface otherwise.
ProjectivePlane tangent_plane(const CubicSurface& V, const ProjectivePoint& p);

/// Plane section as a curve in the chart of `basis` (three independent points
/// of P).  DegenerateBasis if the basis does not span P; ZeroRestriction if
/// the plane lies inside the surface.
PlaneCubicCurve restrict_to_plane(const CubicForm& F, const ProjectivePlane& P,
                                  const std::vector<ProjectivePoint>& basis);

/// Tangent section at p in a deterministic chart of the tangent plane.
PlaneCubicCurve tangent_section(const CubicSurface& V, const ProjectivePoint& p);

} // namespace cubic

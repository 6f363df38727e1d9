// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <optional>
#include <vector>

#include "cubic/field.hpp"

namespace cubic {

using Vec = std::vector<FieldElem>;

/// Point of P^2 or P^3 held in canonical homogeneous coordinates:
///   over Q   — coprime integers, first nonzero coordinate positive;
///   over F_p — first nonzero coordinate equal to 1.
/// Two points are equal iff their canonical coordinate vectors are identical.
class ProjectivePoint {
public:
    explicit ProjectivePoint(Vec coords); // canonicalizes; ZeroVector if all zero

    int dim() const { return static_cast<int>(c_.size()); } // 3 or 4 coordinates
    const FieldDesc& field() const { return c_[0].field(); }
    const FieldElem& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    const Vec& coords() const { return c_; }

    bool operator==(const ProjectivePoint& o) const { return c_ == o.c_; }
    std::strong_ordering operator<=>(const ProjectivePoint& o) const;

    std::string str() const; // "(a:b:c)" textual syntax, used verbatim in CLI and JSONL
    static ProjectivePoint parse(const std::string& s, const FieldDesc& f);

private:
    Vec c_;
};

/// canonicalize is idempotent and kills the scalar action; exposed as a free
/// function so the canonical-form rules are testable on raw vectors too.
Vec canonical_coords(Vec v);

/// Hyperplane given by a canonicalized coefficient vector: p on plane iff
/// sum coeffs_i * p_i = 0.  Used for planes of P^3 and lines of P^2 alike.
class ProjectivePlane {
public:
    explicit ProjectivePlane(Vec coeffs);

    int dim() const { return static_cast<int>(c_.size()); }
    const FieldDesc& field() const { return c_[0].field(); }
    const Vec& coeffs() const { return c_; }
    bool contains(const ProjectivePoint& p) const;

    bool operator==(const ProjectivePlane& o) const { return c_ == o.c_; }
    std::strong_ordering operator<=>(const ProjectivePlane& o) const { return cmp_vec(c_, o.c_); }
    std::string str() const;

    static std::strong_ordering cmp_vec(const Vec& a, const Vec& b);

private:
    Vec c_;
};

/// Line spanned by two distinct points.  Identity is by the reduced row
/// echelon form of the span, so equal point sets compare equal; the original
/// span pair (a, b) is kept as the parametrization  (λ:μ) -> λ·a + μ·b.
class ProjectiveLine {
public:
    ProjectiveLine(const ProjectivePoint& a, const ProjectivePoint& b); // CoincidentPoints if a == b

    const ProjectivePoint& point_a() const { return a_; }
    const ProjectivePoint& point_b() const { return b_; }
    ProjectivePoint at(const FieldElem& lambda, const FieldElem& mu) const;

    bool contains(const ProjectivePoint& p) const; // exact rank condition
    int dim() const { return a_.dim(); }
    const FieldDesc& field() const { return a_.field(); }

    /// All F_p-points of the line, in a deterministic order (finite field only).
    std::vector<ProjectivePoint> points() const;

    /// In P^2 a line is a hyperplane; returns its dual coefficient vector.
    ProjectivePlane dual() const;

    bool operator==(const ProjectiveLine& o) const { return rref_ == o.rref_; }
    std::strong_ordering operator<=>(const ProjectiveLine& o) const;
    std::string str() const;

private:
    ProjectivePoint a_, b_;
    std::vector<Vec> rref_; // two-row canonical basis of the span
};

ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q);
ProjectivePlane plane_through(const ProjectivePoint& p, const ProjectivePoint& q,
                              const ProjectivePoint& r); // CollinearInput on rank <= 2

// Small exact linear algebra on field vectors.
int rank_of(std::vector<Vec> rows);
std::vector<Vec> rref_of(std::vector<Vec> rows);
/// One-dimensional right null space of the rows, if rank == n-1.
std::optional<Vec> null_vector(const std::vector<Vec>& rows, int ncols);
/// Basis of the full right null space.
std::vector<Vec> null_space(const std::vector<Vec>& rows, int ncols);

/// Intersection of a line with a hyperplane: a point, or nullopt when the
/// line lies inside the hyperplane.
std::optional<ProjectivePoint> meet_line_plane(const ProjectiveLine& l, const ProjectivePlane& h);
/// Intersection line of two distinct planes of P^3.
ProjectiveLine meet_planes(const ProjectivePlane& a, const ProjectivePlane& b);
/// Three points spanning the plane, in a deterministic order.
std::vector<ProjectivePoint> plane_basis(const ProjectivePlane& h);
/// Coordinates of p in the given spanning basis (p = sum u_i b_i).
Vec chart_coords(const ProjectivePoint& p, const std::vector<ProjectivePoint>& basis);

/// All points of P^n(F_p) (n = dim-1), canonical representatives, possible
/// only over finite fields; deterministic order.
std::vector<ProjectivePoint> all_projective_points(int ncoords, const FieldDesc& f);
/// All lines of P^3(F_p) resp. P^2(F_p).
std::vector<ProjectiveLine> all_projective_lines(int ncoords, const FieldDesc& f);
/// All hyperplanes (dual points).
std::vector<ProjectivePlane> all_projective_planes(int ncoords, const FieldDesc& f);

} // namespace cubic

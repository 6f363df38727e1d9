// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include "cubic/chord_tangent.hpp"

namespace cubic {

/// Finite abelian group by Cayley table (elements 0..n-1).
class FiniteAbelianGroup {
public:
    static FiniteAbelianGroup cyclic(int n);
    static FiniteAbelianGroup from_table(std::vector<std::vector<int>> table);

    int size() const { return static_cast<int>(t_.size()); }
    int op(int a, int b) const { return t_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    int identity() const { return e_; }
    int inverse(int a) const { return inv_[static_cast<size_t>(a)]; }
    long element_order(int a) const;
    long exponent() const;

private:
    std::vector<std::vector<int>> t_;
    std::vector<int> inv_;
    int e_ = 0;
};

/// The (M, A, mu) data of a combinatorial projective line.  Elements of the
/// extended M-side are indexed 0..|M|-1 for proper elements, then 0_m, oo_m;
/// the extended A-side is 0..|A|-1 then oo_a.  1_m is M's group identity and
/// 0_a is A's.
class MuConfiguration {
public:
    /// mu: map of size |M|+2 with values in 0..|A| (value |A| = oo_a); must be
    /// a bijection sending 1_m, 0_m, oo_m into A.  CardinalityMismatch when
    /// |M|+2 != |A|+1.
    MuConfiguration(FiniteAbelianGroup M, FiniteAbelianGroup A, std::vector<int> mu);

    const FiniteAbelianGroup& M() const { return m_; }
    const FiniteAbelianGroup& A() const { return a_; }
    int msize() const { return m_.size(); }
    int asize() const { return a_.size(); }
    int zero_m() const { return msize(); }     // improper 0_m
    int inf_m() const { return msize() + 1; }  // improper oo_m
    int inf_a() const { return asize(); }      // improper oo_a
    int mu(int x) const { return mu_[static_cast<size_t>(x)]; }
    int mu_inverse(int y) const { return mu_inv_[static_cast<size_t>(y)]; }

    // partial laws of the extended sets; -1 encodes "undefined"
    int m_mul(int x, int y) const;      // covers p·0_m = 0_m, p·oo_m = oo_m; 0_m·oo_m undefined
    int m_invert(int x) const;          // i(0_m) = oo_m, i(oo_m) = 0_m
    int a_sub(int x, int y) const;      // q ± oo_a = oo_a
    bool is_proper_m(int x) const { return x < msize(); }
    bool is_proper_a(int y) const { return y < asize(); }

private:
    FiniteAbelianGroup m_, a_;
    std::vector<int> mu_, mu_inv_;
};

struct NuResult {
    std::vector<int> nu;      // indexed over M ∪ {0_m, oo_m}, values in A ∪ {oo_a}
    bool well_defined = true; // no intermediate escaped the partial laws
    bool bijective = false;
    std::string failure; // clause description when not usable
};

/// Eq. (2.5) evaluated elementwise with the improper-element rules; checks
/// the Eq. (2.6) values nu(0_m) = 0_a, nu(oo_m) = oo_a and bijectivity.
NuResult nu_map(const MuConfiguration& cfg);

struct ReconstructedField {
    int order = 0;
    std::vector<std::vector<int>> add; // carrier: A's elements
    std::vector<std::vector<int>> mul; // transported through nu
    int zero = -1, one = -1;
    bool verified = false;
    std::string failed_axiom;          // with witnesses, when !verified
    std::vector<int> iso_to_prime_field; // element -> residue, when the field is F_p
};

/// Lemma 2.3: keep A's addition, transport M's multiplication through nu,
/// verify all field axioms exhaustively.  Errors: NotWellDefined /
/// NotBijective (from nu), AxiomFailure.
ReconstructedField reconstruct_field(const MuConfiguration& cfg);

/// Geometric (C_m, C_a)-configuration inside P^3.
struct CmCaConfiguration {
    CubicSurface V;
    ProjectivePoint p_m, p_a;
    ProjectivePlane P_m, P_a;
    PlaneCubicCurve C_m, C_a;
    ProjectiveLine l; // P_m ∩ P_a
    // marked points on l
    ProjectivePoint zero_m_l, inf_m_l; // node tangents ∩ l, deterministic order
    ProjectivePoint inf_a_l;           // cusp triple tangent ∩ l
    ProjectivePoint zero_a_l, one_m_l; // projections of the chosen base points
    // chosen base points (ambient coordinates)
    ProjectivePoint one_m, zero_a;
    // carriers in a deterministic order (ambient coordinates)
    std::vector<ProjectivePoint> m_points, a_points;
};

/// Assembles tangent planes, sections, l = P_m ∩ P_a and the five marked
/// points; chooses 1_m and 0_a deterministically among valid options.
/// Errors: WrongType(p, actual tag), ConstraintCViolated, NotOnSurface,
/// SingularPoint, and precondition failures for a common line in V.
CmCaConfiguration build_cm_ca(const CubicSurface& V, const ProjectivePoint& p_m,
                              const ProjectivePoint& p_a);

/// Eq. (2.8): mu := beta^{-1} ∘ alpha by projecting through p_m and p_a onto
/// l.  Returns the abstract configuration ready for reconstruct_field
/// together with the A-side index of the chosen zero.
/// Errors: IrrationalIntersection when a projection misses the rational points.
std::pair<MuConfiguration, int> mu_from_geometry(const CmCaConfiguration& cfg);

/// Deterministic scan for a valid (C_m, C_a)-configuration on a surface over
/// F_p: pairs candidate points by their discriminant type and returns the
/// first pair accepted by build_cm_ca.
std::optional<CmCaConfiguration> find_cm_ca(const CubicSurface& V);

/// Cycle on the common line l given as three (not necessarily distinct)
/// points of l.
using LineCycle = std::vector<ProjectivePoint>;

/// §2.7 normal forms: recovers C_m: z1 z2 z3 + c(z1,z2) and
/// C_a: z1^2 z3 + c'(z1,z2) from the intersection cycles C_m ∩ l, C_a ∩ l
/// written in the normalized coordinates (l: z3 = 0, 0_a = (1:0:0)).
/// Errors: CycleMismatch if a cycle point is off l (z3 != 0).
std::pair<CubicForm, CubicForm> recover_curve_equations(const LineCycle& cm_cycle,
                                                        const LineCycle& ca_cycle,
                                                        const FieldDesc& field);

/// Tetrahedral data: boundary cubics g_i on the planes z_i = 0, each known up
/// to a scalar; g_i uses the three variables z_j, j != i (as a 4-variable
/// form with z_i absent).
struct TetrahedralConfig {
    std::array<CubicForm, 4> boundary; // forms of the C_i in their planes
};

struct Graph4 {
    std::array<std::array<bool, 4>, 4> adj{};
    bool connected() const;
    std::vector<std::pair<int, int>> edges() const;
};

/// §2.8 graph G: i ~ j iff some cubic monomial in the other two variables has
/// nonzero coefficients in both boundary forms.
Graph4 build_graph_g(const TetrahedralConfig& tc);

/// Prop. 2.8.1: solves the compatible scaling along a spanning tree of G and
/// assembles the unique cubic form (up to one scalar).  Errors:
/// DisconnectedGraph, IncompatibleScalars(edge, monomial).
CubicForm tetrahedral_reconstruct(const TetrahedralConfig& tc);

/// Boundary forms F|_{z_i = 0} of a surface (the natural source of a
/// tetrahedral configuration for the coordinate planes).
TetrahedralConfig extract_boundary_forms(const CubicSurface& V);

} // namespace cubic

// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <set>

#include "cubic/reconstruction.hpp"

namespace cubic {

/// Abstract (S, L, P): opaque point labels, a ternary collinearity relation
/// stored as ordered triples (symmetric closures are added by the builders;
/// raw insertion is kept available so corrupted instances are expressible),
/// and a family of subsets called plane sections.
class CombStructure {
public:
    explicit CombStructure(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Adds the full permutation closure of the multiset {a, b, c}.
    void add_collinear(int a, int b, int c);
    /// Adds one ordered triple only (negative-test corruption path).
    void add_collinear_raw(int a, int b, int c);
    void remove_collinear_raw(int a, int b, int c);
    bool collinear(int a, int b, int c) const;
    const std::set<std::array<int, 3>>& triples() const { return L_; }

    /// All r with (a, b, r) in L.
    std::vector<int> thirds(int a, int b) const;

    void add_section(std::set<int> section);
    void remove_section(const std::set<int>& section);
    const std::vector<std::set<int>>& sections() const { return P_; }

    /// Multiset representatives (sorted triples) of L.
    std::vector<std::array<int, 3>> cycles() const;

    /// Lines per Axiom 3.2(iii): the full third-point sets l(p,q) of pairs
    /// with a non-unique third.
    std::vector<std::set<int>> lines() const;

    /// Tangent section C_p = {q | (p,p,q) in L} ∪ {p} (Eq. 3.1).
    std::set<int> tangent_section_set(int p) const;

private:
    std::vector<std::string> labels_;
    std::set<std::array<int, 3>> L_;
    std::vector<std::set<int>> P_;
};

/// Geometric instantiation over F_p per the conventions of 3.2.1: L from all
/// lines of P^3(F_p) (full rational cycles with multiplicities, plus the
/// closure of lines inside V), P from planes with >= 2 points of S, tangent
/// planes, and planes through a branch tangent of a multiplicative section.
/// Errors: SingularSurface.
CombStructure from_geometric(const CubicSurface& V);

struct AxiomVerdict {
    bool pass = true;
    std::string witness; // concrete tuple, re-checkable in isolation
};

struct AxiomReport {
    // 3.2 (i)-(iii)
    AxiomVerdict totality, strict_symmetry, line_closure;
    // 3.3.1, 3.3.2, 3.3.3
    AxiomVerdict tangent_sections, composition, pencils;
    std::string note;
    bool collinearity_pass() const { return totality.pass && strict_symmetry.pass && line_closure.pass; }
    bool all_pass() const {
        return collinearity_pass() && tangent_sections.pass && composition.pass && pencils.pass;
    }
};

AxiomReport check_collinearity_axioms(const CombStructure& cs);
/// Requires the collinearity axioms to pass (checked; reported otherwise).
AxiomReport check_plane_axioms(const CombStructure& cs);

/// Def. 3.5.1 on abstract data: builds the pencil over the triple through
/// p_m, p_a, derives mu from the per-plane pairing, picks base points
/// deterministically and returns a configuration that reconstructs.  Errors:
/// NotAFunction, NotBijectiveOutsideTwo, IntersectionNotThreePoints,
/// InvalidConfig (preconditions).
MuConfiguration detect_cm_ca(const CombStructure& cs, int p_m, int p_a);

/// Finite incidence structure for the projective-plane and Pappus checks.
struct IncidenceStructure {
    int npoints = 0;
    std::vector<std::vector<int>> lines;
};

struct PlaneReport {
    AxiomVerdict unique_join;  // two points on exactly one common line
    AxiomVerdict unique_meet;  // two lines meet in exactly one point
    AxiomVerdict pappus;       // exhaustive hexagon check
    bool nondegenerate = false; // a quadrilateral exists
    bool incidence_pass() const { return unique_join.pass && unique_meet.pass; }
};

PlaneReport check_projective_plane(const IncidenceStructure& is);

/// Input of the large-field curve predicate: an abelian symmetric quasigroup
/// (possibly partial: -1 entries mean "no rational cycle") plus a pencil
/// family over the cycle set.
struct LargeFieldInput {
    QuasigroupView S;
    std::vector<std::vector<int>> pencils; // sets of cycle indices
};

struct LargeFieldReport {
    std::vector<std::array<int, 3>> cycles; // cycle id -> sorted triple
    PlaneReport plane;                      // (L0, P0) as an incidence structure
    AxiomVerdict clause_i, clause_ii, clause_iii;
    bool all_pass() const {
        return plane.incidence_pass() && clause_i.pass && clause_ii.pass && clause_iii.pass;
    }
};

/// Def. 4.2 clauses (i)-(iii) verified literally on the finite data; the
/// projective-plane precondition on (L0, P0) is checked and reported.
LargeFieldReport check_large_field_curve(const LargeFieldInput& in);

/// Cycle list of a (possibly partial) quasigroup: sorted triples {p,q,p∘q}.
std::vector<std::array<int, 3>> quasigroup_cycles(const QuasigroupView& S);

} // namespace cubic

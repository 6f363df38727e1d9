// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/chord_tangent.hpp"

#include <algorithm>

namespace cubic {

namespace {

bool gradient_nonzero(const CubicForm& F, const ProjectivePoint& p) {
    for (const auto& x : F.gradient(p))
        if (!x.is_zero()) return true;
    return false;
}

ProjectivePoint line_point(const ProjectivePoint& a, const ProjectivePoint& b, const FieldElem& lam,
                           const FieldElem& mu) {
    Vec v;
    v.reserve(static_cast<size_t>(a.dim()));
    for (int i = 0; i < a.dim(); ++i) v.push_back(lam * a[i] + mu * b[i]);
    return ProjectivePoint(std::move(v));
}

/// Divides out the known roots (1:0) and (0:1) once each and returns the
/// cycle p + q + r; r is the residual rational root.
CollinearOutcome residual_of_chord(const CubicForm& F, const ProjectivePoint& p,
                                   const ProjectivePoint& q) {
    const FieldDesc f = F.field();
    BinaryForm g = F.restrict_to_line(p, q);
    if (g.is_zero()) return {}; // caller interprets (line inside the variety)
    FieldElem one = FieldElem::of(1, f), zero = FieldElem::of(0, f);
    BinaryForm g1 = g.deflate(one, zero).deflate(zero, one); // linear: c1 λ + c0 μ
    FieldElem c1 = g1.coeff_u(1), c0 = g1.coeff_u(0);
    ProjectivePoint r = line_point(p, q, -c0, c1);
    CollinearOutcome out;
    out.kind = CollinearOutcome::Kind::Unique;
    out.point = r;
    for (const auto& pt : {p, q, r}) {
        bool merged = false;
        for (auto& [cp, m] : out.cycle)
            if (cp == pt) {
                ++m;
                merged = true;
                break;
            }
        if (!merged) out.cycle.push_back({pt, 1});
    }
    return out;
}

} // namespace

CollinearOutcome third_point_on_curve(const PlaneCubicCurve& C, const ProjectivePoint& p,
                                      const ProjectivePoint& q) {
    const CubicForm& F = C.form;
    for (const auto* pt : {&p, &q}) {
        if (!F.evaluate(*pt).is_zero()) fail(Err::NotOnCurve, pt->str());
        if (!gradient_nonzero(F, *pt)) fail(Err::SingularInput, "singular point " + pt->str());
    }
    if (p == q) {
        // tangent line at p: gradient dual
        ProjectivePlane tangent(F.gradient(p));
        auto basis = plane_basis(tangent);
        ProjectivePoint s = basis[0] == p ? basis[1] : basis[0];
        BinaryForm g = F.restrict_to_line(p, s);
        if (g.is_zero()) {
            CollinearOutcome out;
            out.kind = CollinearOutcome::Kind::LineInSurface;
            out.line = ProjectiveLine(p, s);
            return out;
        }
        const FieldDesc f = F.field();
        FieldElem one = FieldElem::of(1, f), zero = FieldElem::of(0, f);
        BinaryForm g1 = g.deflate(one, zero).deflate(one, zero); // tangency: (1:0) twice
        FieldElem c1 = g1.coeff_u(1), c0 = g1.coeff_u(0);
        ProjectivePoint r = line_point(p, s, -c0, c1);
        CollinearOutcome out;
        out.kind = CollinearOutcome::Kind::Unique;
        out.point = r;
        out.cycle = {{p, 2}};
        if (r == p) out.cycle[0].second = 3;
        else out.cycle.push_back({r, 1});
        return out;
    }
    CollinearOutcome out = residual_of_chord(F, p, q);
    if (out.kind == CollinearOutcome::Kind::Undefined) {
        out.kind = CollinearOutcome::Kind::LineInSurface;
        out.line = ProjectiveLine(p, q);
    }
    return out;
}

CollinearOutcome compose_on_surface(const CubicSurface& V, const ProjectivePoint& p,
                                    const ProjectivePoint& q) {
    const CubicForm& F = V.form;
    for (const auto* pt : {&p, &q}) {
        if (!F.evaluate(*pt).is_zero()) fail(Err::NotOnSurface, pt->str());
        if (!gradient_nonzero(F, *pt)) fail(Err::SingularPoint, "singular point " + pt->str());
    }
    if (p == q) {
        CollinearOutcome out;
        out.kind = CollinearOutcome::Kind::TangentSection;
        out.section = tangent_section(V, p);
        return out;
    }
    CollinearOutcome out = residual_of_chord(F, p, q);
    if (out.kind == CollinearOutcome::Kind::Undefined) {
        out.kind = CollinearOutcome::Kind::LineInSurface;
        out.line = ProjectiveLine(p, q);
    }
    return out;
}

QuasigroupView QuasigroupView::from_curve(const PlaneCubicCurve& C) {
    const FieldDesc f = C.form.field();
    if (!f.finite()) fail(Err::Unsupported, "quasigroup views need a finite field");
    QuasigroupView v;
    v.field_ = f;
    for (const auto& pt : all_projective_points(3, f)) {
        if (!C.form.evaluate(pt).is_zero()) continue;
        if (gradient_nonzero(C.form, pt)) v.carrier_.push_back(pt);
    }
    const int n = static_cast<int>(v.carrier_.size());
    v.table_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            CollinearOutcome o = third_point_on_curve(C, v.carrier_[static_cast<size_t>(i)],
                                                      v.carrier_[static_cast<size_t>(j)]);
            int r = -1;
            if (o.kind == CollinearOutcome::Kind::Unique) {
                auto it = std::lower_bound(v.carrier_.begin(), v.carrier_.end(), *o.point);
                if (it != v.carrier_.end() && *it == *o.point)
                    r = static_cast<int>(it - v.carrier_.begin());
                // a residual landing on a singular point stays undefined
            }
            v.table_[static_cast<size_t>(i)][static_cast<size_t>(j)] = r;
            v.table_[static_cast<size_t>(j)][static_cast<size_t>(i)] = r;
        }
    return v;
}

QuasigroupView QuasigroupView::from_table(std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(table.size());
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) fail(Err::InvalidConfig, "ragged composition table");
        for (int x : row)
            if (x < -1 || x >= n) fail(Err::InvalidConfig, "table entry out of range");
    }
    QuasigroupView v;
    v.table_ = std::move(table);
    return v;
}

bool QuasigroupView::total() const {
    for (const auto& row : table_)
        for (int x : row)
            if (x < 0) return false;
    return true;
}

bool QuasigroupView::satisfies_quasigroup_laws(std::string* witness) const {
    const int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int ij = compose(i, j);
            if (ij != compose(j, i)) {
                if (witness) *witness = "commutativity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
            if (ij >= 0 && compose(i, ij) != j) {
                if (witness) *witness = "involution law fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
        }
    return true;
}

std::vector<int> translation_involution(const QuasigroupView& S, int p) {
    const int n = S.size();
    std::vector<int> t(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
        int r = S.compose(p, q);
        if (r < 0) fail(Err::PartialLaw, "composition " + std::to_string(p) + "∘" + std::to_string(q) + " undefined");
        t[static_cast<size_t>(q)] = r;
    }
    for (int q = 0; q < n; ++q)
        if (t[static_cast<size_t>(t[static_cast<size_t>(q)])] != q)
            fail(Err::Internal, "t_p is not an involution");
    return t;
}

AbelianReport check_abelian(const QuasigroupView& S, bool exhaustive) {
    const int n = S.size();
    AbelianReport rep;
    rep.triples_total = static_cast<long long>(n) * n * n;
    if (n == 0) return rep;
    std::vector<std::vector<int>> t;
    t.reserve(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) t.push_back(translation_involution(S, p));

    auto triple_ok = [&](int p, int q, int r) {
        const auto &tp = t[static_cast<size_t>(p)], &tq = t[static_cast<size_t>(q)],
                   &tr = t[static_cast<size_t>(r)];
        for (int x = 0; x < n; ++x) {
            int y = tp[static_cast<size_t>(tq[static_cast<size_t>(tr[static_cast<size_t>(x)])])];
            int z = tp[static_cast<size_t>(tq[static_cast<size_t>(tr[static_cast<size_t>(y)])])];
            if (z != x) return false;
        }
        return true;
    };

    if (exhaustive || rep.triples_total <= 10000) {
        rep.exhaustive = true;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r) {
                    ++rep.triples_checked;
                    if (!triple_ok(p, q, r)) {
                        rep.pass = false;
                        rep.violation = {{p, q, r}};
                        return rep;
                    }
                }
        return rep;
    }
    rep.exhaustive = false;
    rep.seed = 0x9e3779b97f4a7c15ull; // fixed and recorded for reproducibility
    std::uint64_t state = rep.seed;
    for (int k = 0; k < 10000; ++k) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        int p = static_cast<int>((state >> 33) % static_cast<std::uint64_t>(n));
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        int q = static_cast<int>((state >> 33) % static_cast<std::uint64_t>(n));
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        int r = static_cast<int>((state >> 33) % static_cast<std::uint64_t>(n));
        ++rep.triples_checked;
        if (!triple_ok(p, q, r)) {
            rep.pass = false;
            rep.violation = {{p, q, r}};
            return rep;
        }
    }
    return rep;
}

GroupAnalysis group_law(const QuasigroupView& S, int u) {
    const int n = S.size();
    if (n == 0) fail(Err::InvalidConfig, "empty carrier");
    if (!S.total()) fail(Err::PartialLaw, "composition law is partial");
    AbelianReport ab = check_abelian(S, n <= 60);
    if (!ab.pass) fail(Err::NotAbelian, "quasigroup is not abelian");

    std::vector<std::vector<int>> mul(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = S.compose(u, S.compose(a, b));
    // group axioms, exhaustively
    int e = -1;
    for (int cand = 0; cand < n && e < 0; ++cand) {
        bool id = true;
        for (int a = 0; a < n; ++a) id = id && mul[static_cast<size_t>(cand)][static_cast<size_t>(a)] == a;
        if (id) e = cand;
    }
    if (e < 0) fail(Err::Internal, "no identity in the derived law");
    for (int a = 0; a < n; ++a) {
        bool inv = false;
        for (int b = 0; b < n; ++b) inv = inv || mul[static_cast<size_t>(a)][static_cast<size_t>(b)] == e;
        if (!inv) fail(Err::Internal, "missing inverse in the derived law");
        for (int b = 0; b < n; ++b) {
            if (mul[static_cast<size_t>(a)][static_cast<size_t>(b)] != mul[static_cast<size_t>(b)][static_cast<size_t>(a)])
                fail(Err::Internal, "derived law is not commutative");
            for (int c = 0; c < n; ++c)
                if (mul[static_cast<size_t>(mul[static_cast<size_t>(a)][static_cast<size_t>(b)])][static_cast<size_t>(c)] !=
                    mul[static_cast<size_t>(a)][static_cast<size_t>(mul[static_cast<size_t>(b)][static_cast<size_t>(c)])])
                    fail(Err::Internal, "derived law is not associative");
        }
    }

    GroupAnalysis g;
    g.order = n;
    for (int a = 0; a < n; ++a) {
        long ord = 1;
        int x = a;
        while (x != e) {
            x = mul[static_cast<size_t>(x)][static_cast<size_t>(a)];
            ++ord;
        }
        g.element_orders.push_back(ord);
        g.exponent = std::max(g.exponent, ord); // abelian: exponent = lcm = max order iff cyclic p-group... computed below
        if (ord == static_cast<long>(n)) {
            g.cyclic = true;
            if (g.generator_witness < 0) g.generator_witness = a;
        }
    }
    // exponent = lcm of element orders
    auto lcm = [](long a, long b) {
        long g0 = a, h = b;
        while (h) std::swap(g0 %= h, h);
        return a / g0 * b;
    };
    g.exponent = 1;
    for (long o : g.element_orders) g.exponent = lcm(g.exponent, o);

    g.structure = g.cyclic ? "CyclicOfOrder(" + std::to_string(n) + ")" : "Other";
    if (S.field() && S.field()->finite()) {
        long p = static_cast<long>(S.field()->p);
        if (g.cyclic && n == p - 1) g.structure = "Isomorphic_Kstar";
        else if (n == p && g.exponent == p) g.structure = "Isomorphic_Kplus";
        else if (g.cyclic && n == p + 1) g.structure = "NonsplitTorus";
    }
    return g;
}

} // namespace cubic

// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/classify.hpp"

#include <algorithm>
#include <map>

#include "extscan.hpp"

namespace cubic {

const char* curve_tag_name(CurveTag t) {
    switch (t) {
    case CurveTag::Smooth: return "Smooth";
    case CurveTag::Multiplicative: return "Multiplicative";
    case CurveTag::Additive: return "Additive";
    case CurveTag::TwistedMultiplicative: return "TwistedMultiplicative";
    case CurveTag::TwistedAdditive: return "TwistedAdditive";
    case CurveTag::Reducible: return "Reducible";
    case CurveTag::MultipleSingular: return "MultipleSingular";
    case CurveTag::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// degree-2 monomials in 3 variables, fixed order
const std::array<std::array<int, 3>, 6> kQuadMons{{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};

std::array<std::map<std::array<int, 3>, FieldElem>, 3> partial_quadrics(const CubicForm& f3) {
    std::array<std::map<std::array<int, 3>, FieldElem>, 3> q;
    for (const auto& [m, c] : f3.coeffs())
        for (int i = 0; i < 3; ++i) {
            if (m[static_cast<size_t>(i)] == 0) continue;
            std::array<int, 3> e{m[0], m[1], m[2]};
            FieldElem coef = c * FieldElem::of(e[static_cast<size_t>(i)], f3.field());
            --e[static_cast<size_t>(i)];
            if (coef.is_zero()) continue;
            auto [it, fresh] = q[static_cast<size_t>(i)].try_emplace(e, coef);
            if (!fresh) it->second += coef;
        }
    return q;
}

FieldElem det_gauss(std::vector<Vec> a, const FieldDesc& f) {
    const size_t n = a.size();
    FieldElem det = FieldElem::of(1, f);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) return FieldElem::of(0, f);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        FieldElem inv = a[c][c].inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            FieldElem fac = a[i][c] * inv;
            for (size_t j = c; j < n; ++j) a[i][j] -= fac * a[c][j];
        }
    }
    return det;
}

} // namespace

FieldElem macaulay_det3(const CubicForm& f3) {
    const FieldDesc f = f3.field();
    auto q = partial_quadrics(f3);
    // columns: degree-4 monomials in 3 variables
    std::vector<std::array<int, 3>> cols;
    for (int a = 4; a >= 0; --a)
        for (int b = 4 - a; b >= 0; --b) cols.push_back({a, b, 4 - a - b});
    auto col_index = [&](const std::array<int, 3>& m) {
        return static_cast<size_t>(std::find(cols.begin(), cols.end(), m) - cols.begin());
    };
    std::vector<Vec> M;
    for (const auto& m : cols) {
        int which = m[0] >= 2 ? 0 : (m[1] >= 2 ? 1 : 2);
        std::array<int, 3> mu = m;
        mu[static_cast<size_t>(which)] -= 2;
        Vec row(cols.size(), FieldElem::of(0, f));
        for (const auto& [e, c] : q[static_cast<size_t>(which)]) {
            std::array<int, 3> prod{e[0] + mu[0], e[1] + mu[1], e[2] + mu[2]};
            row[col_index(prod)] += c;
        }
        M.push_back(std::move(row));
    }
    return det_gauss(std::move(M), f);
}

namespace {

std::vector<ProjectivePoint> singular_points_fp(const CubicForm& f3) {
    std::vector<ProjectivePoint> out;
    for (const auto& pt : all_projective_points(3, f3.field())) {
        if (!f3.evaluate(pt).is_zero()) continue;
        Vec g = f3.gradient(pt);
        bool nz = false;
        for (const auto& x : g) nz = nz || !x.is_zero();
        if (!nz) out.push_back(pt);
    }
    return out;
}

// ---- rational singular points over Q: elimination on the partial conics ----

using BiPoly = std::map<std::pair<int, int>, FieldElem>; // (deg x, deg y) -> coeff

BiPoly dehomogenize(const std::map<std::array<int, 3>, FieldElem>& form) {
    BiPoly f;
    for (const auto& [e, c] : form) f[{e[0], e[1]}] = c; // z = 1
    return f;
}

std::vector<UniPoly> coeffs_in_x(const BiPoly& f, const FieldDesc& fd) {
    int dx = 0;
    for (const auto& [e, c] : f) dx = std::max(dx, e.first);
    std::vector<std::vector<FieldElem>> cc(static_cast<size_t>(dx) + 1);
    for (const auto& [e, c] : f) {
        auto& v = cc[static_cast<size_t>(e.first)];
        if (static_cast<int>(v.size()) <= e.second) v.resize(static_cast<size_t>(e.second) + 1, FieldElem::of(0, fd));
        v[static_cast<size_t>(e.second)] = c;
    }
    std::vector<UniPoly> out;
    for (auto& v : cc) out.emplace_back(std::move(v), fd);
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

UniPoly resultant_x(std::vector<UniPoly> a, std::vector<UniPoly> b, const FieldDesc& fd) {
    // Sylvester determinant with UniPoly entries, true degrees.
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < 0 || db < 0) return UniPoly::zero(fd);
    if (da == 0 && db == 0) return UniPoly::constant(FieldElem::of(1, fd)); // no x at all
    int n = da + db;
    std::vector<std::vector<UniPoly>> S(static_cast<size_t>(n),
                                        std::vector<UniPoly>(static_cast<size_t>(n), UniPoly::zero(fd)));
    for (int r = 0; r < db; ++r)
        for (int i = 0; i <= da; ++i) S[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = a[static_cast<size_t>(da - i)];
    for (int r = 0; r < da; ++r)
        for (int i = 0; i <= db; ++i)
            S[static_cast<size_t>(db + r)][static_cast<size_t>(r + i)] = b[static_cast<size_t>(db - i)];
    // fraction-free-ish cofactor expansion (n <= 4)
    std::function<UniPoly(std::vector<std::vector<UniPoly>>&, std::vector<int>&, size_t)> det =
        [&](std::vector<std::vector<UniPoly>>& m, std::vector<int>& colmask, size_t row) -> UniPoly {
        if (row == m.size()) return UniPoly::constant(FieldElem::of(1, fd));
        UniPoly acc = UniPoly::zero(fd);
        int sign = 1;
        for (size_t c = 0; c < m.size(); ++c) {
            if (colmask[c]) continue;
            if (!m[row][c].is_zero()) {
                colmask[c] = 1;
                UniPoly sub = det(m, colmask, row + 1);
                colmask[c] = 0;
                UniPoly term = m[row][c] * sub;
                if (sign < 0) term = UniPoly::zero(fd) - term;
                acc = acc + term;
            }
            sign = -sign;
        }
        return acc;
    };
    std::vector<int> mask(static_cast<size_t>(n), 0);
    return det(S, mask, 0);
}

std::vector<ProjectivePoint> singular_points_q(const CubicForm& f3) {
    const FieldDesc fd = f3.field();
    std::vector<ProjectivePoint> out;
    auto push_unique = [&](const ProjectivePoint& p) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    };
    auto verify = [&](const Vec& raw) -> bool {
        Vec g = f3.gradient_raw(raw);
        for (const auto& x : g)
            if (!x.is_zero()) return false;
        return f3.evaluate_raw(raw).is_zero();
    };

    auto q = partial_quadrics(f3);

    // Chart z = 1: eliminate x from (F_x, F_y); use (F_x, F_z) as fallback pair.
    std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, j] : pairs) {
        BiPoly a = dehomogenize(q[static_cast<size_t>(i)]), b = dehomogenize(q[static_cast<size_t>(j)]);
        auto ax = coeffs_in_x(a, fd), bx = coeffs_in_x(b, fd);
        if ((ax.size() == 1 && ax[0].is_zero()) || (bx.size() == 1 && bx[0].is_zero())) continue;
        UniPoly R = resultant_x(ax, bx, fd);
        if (R.is_zero()) continue; // shared component; another pair may separate
        for (auto& [y0, mult] : R.roots_in_field()) {
            // common x-roots at y = y0
            UniPoly pa = UniPoly::zero(fd), pb = pa;
            {
                std::vector<FieldElem> ca, cb;
                for (auto& u : ax) ca.push_back(u.eval(y0));
                for (auto& u : bx) cb.push_back(u.eval(y0));
                pa = UniPoly(std::move(ca), fd);
                pb = UniPoly(std::move(cb), fd);
            }
            UniPoly g = pa.is_zero() ? pb : (pb.is_zero() ? pa : UniPoly::gcd(pa, pb));
            if (g.is_zero()) continue;
            if (g.degree() == 0) continue;
            for (auto& [x0, m2] : g.roots_in_field()) {
                Vec raw{x0, y0, FieldElem::of(1, fd)};
                if (verify(raw)) push_unique(ProjectivePoint(raw));
            }
        }
    }
    // Line z = 0: the three partials restricted are binary forms in (x, y).
    {
        std::vector<BinaryForm> bs;
        for (int i = 0; i < 3; ++i) {
            std::vector<FieldElem> c(3, FieldElem::of(0, fd)); // u^0..u^2 times v^(2-k)
            for (const auto& [e, coef] : q[static_cast<size_t>(i)])
                if (e[2] == 0) c[static_cast<size_t>(e[0])] += coef;
            bs.emplace_back(std::move(c), fd);
        }
        // candidates: roots of any nonzero restricted partial
        for (const auto& b : bs) {
            if (b.is_zero()) continue;
            for (auto& [uv, m] : b.roots()) {
                Vec raw{uv.first, uv.second, FieldElem::of(0, fd)};
                if (verify(raw)) push_unique(ProjectivePoint(raw));
            }
            break;
        }
        // all three identically zero on z=0 cannot happen for a nonzero cubic's
        // partials unless char divides everything; then the bounded scan below helps.
    }
    // Small bounded scan as a safety net for degenerate elimination cases
    // (shared components), e.g. non-reduced inputs.
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                Vec raw{FieldElem::rational(a), FieldElem::rational(b), FieldElem::rational(c)};
                if (verify(raw)) push_unique(ProjectivePoint(raw));
            }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<ProjectivePoint> rational_singular_points(const CubicForm& f3) {
    if (f3.nvars() != 3) fail(Err::DimensionMismatch, "singular search is for plane cubics");
    if (f3.is_zero()) fail(Err::InvalidConfig, "zero form");
    return f3.field().finite() ? singular_points_fp(f3) : singular_points_q(f3);
}

Smoothness smoothness_over_closure(const CubicForm& f3) {
    const FieldDesc fd = f3.field();
    if (fd.finite()) {
        if (fd.p >= 5 && !macaulay_det3(f3).is_zero()) return Smoothness::Smooth;
        if (!singular_points_fp(f3).empty()) return Smoothness::Singular;
        if (fd.p <= 13) {
            for (int k = 2; k <= 3; ++k)
                if (detail::has_singular_point_ext(f3, k)) return Smoothness::Singular;
            return Smoothness::Smooth;
        }
        return Smoothness::Indeterminate;
    }
    if (!macaulay_det3(f3).is_zero()) return Smoothness::Smooth;
    if (!singular_points_q(f3).empty()) return Smoothness::Singular;
    // good reduction: smooth mod p (over the closure) implies smooth over Q
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        FieldDesc fp = FieldDesc::Fp(p);
        CubicForm g(3, fp);
        bool ok = true;
        for (const auto& [m, c] : f3.coeffs()) {
            const mpq_class& r = c.rat();
            mpz_class den = r.get_den();
            if (mpz_divisible_ui_p(den.get_mpz_t(), p)) { ok = false; break; }
            g.add_coeff(m, FieldElem::parse(r.get_str(), fp));
        }
        if (!ok || g.is_zero()) continue;
        if (smoothness_over_closure(g) == Smoothness::Smooth) return Smoothness::Smooth;
    }
    return Smoothness::Indeterminate;
}

LocalExpansion local_expansion(const CubicForm& f3, const ProjectivePoint& s) {
    const FieldDesc fd = f3.field();
    int lead = -1;
    for (int i = 0; i < 3; ++i)
        if (!s[i].is_zero()) { lead = i; break; }
    std::vector<int> others;
    for (int i = 0; i < 3; ++i)
        if (i != lead) others.push_back(i);
    auto unit = [&](int i) {
        Vec v(3, FieldElem::of(0, fd));
        v[static_cast<size_t>(i)] = FieldElem::of(1, fd);
        return v;
    };
    std::vector<Vec> cols{unit(others[0]), unit(others[1]), s.coords()};
    CubicForm G = f3.substitute(cols); // singular point now at (0:0:1)
    std::vector<FieldElem> cone(3, FieldElem::of(0, fd)), cub(4, FieldElem::of(0, fd));
    for (const auto& [m, c] : G.coeffs()) {
        int w = m[2];
        if (w == 3 || w == 2) fail(Err::Internal, "not singular at the given point");
        if (w == 1) cone[static_cast<size_t>(m[0])] += c;
        else cub[static_cast<size_t>(m[0])] += c;
    }
    std::vector<ProjectivePoint> dirs{ProjectivePoint(unit(others[0])), ProjectivePoint(unit(others[1]))};
    return LocalExpansion{BinaryForm(std::move(cone), fd), BinaryForm(std::move(cub), fd), std::move(dirs)};
}

namespace {

// A linear form divides F iff F restricted to its zero line vanishes
// identically.  Complete over F_p; bounded coefficient scan over Q.
bool has_linear_factor(const CubicForm& F) {
    const FieldDesc fd = F.field();
    auto divides = [&](const Vec& l) {
        auto basis = plane_basis(ProjectivePlane(l));
        return F.restrict_to_line(basis[0], basis[1]).is_zero();
    };
    if (fd.finite()) {
        for (const auto& l : all_projective_points(3, fd))
            if (divides(l.coords())) return true;
        return false;
    }
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            for (int c = 0; c <= 6; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                Vec l{FieldElem::rational(a), FieldElem::rational(b), FieldElem::rational(c)};
                if (divides(l)) return true;
            }
    return false;
}

} // namespace

CurveType classify_curve(const PlaneCubicCurve& C, const std::optional<ProjectivePoint>& singular_hint) {
    const CubicForm& F = C.form;
    const FieldDesc fd = F.field();

    if (singular_hint) {
        Vec g = F.gradient(*singular_hint);
        bool nz = false;
        for (const auto& x : g) nz = nz || !x.is_zero();
        if (nz || !F.evaluate(*singular_hint).is_zero())
            fail(Err::InvalidConfig, "hint point is not singular");
    }
    std::vector<ProjectivePoint> sing = rational_singular_points(F);

    if (sing.empty()) {
        switch (smoothness_over_closure(F)) {
        case Smoothness::Smooth: return {CurveTag::Smooth, std::nullopt, {}, ""};
        case Smoothness::Singular:
            if (has_linear_factor(F))
                return {CurveTag::Reducible, std::nullopt, {}, "rational linear factor, irrational singular points"};
            return {CurveTag::Unknown, std::nullopt, {}, "singular over the closure, no rational singular point"};
        case Smoothness::Indeterminate:
            return {CurveTag::Unknown, std::nullopt, {}, "smoothness not certified"};
        }
    }
    if (sing.size() >= 2) {
        if (has_linear_factor(F))
            return {CurveTag::Reducible, sing[0], {}, "multiple rational singular points"};
        return {CurveTag::MultipleSingular, sing[0], {}, "multiple rational singular points"};
    }

    const ProjectivePoint& s = sing[0];
    LocalExpansion le = local_expansion(F, s);
    if (le.cone.is_zero()) {
        // triple point: three concurrent lines; rational iff the binary cubic
        // of leading terms has a rational root
        if (!le.cubic.is_zero() && !le.cubic.roots().empty())
            return {CurveTag::Reducible, s, {}, "triple point, rational line"};
        return {CurveTag::MultipleSingular, s, {}, "triple point"};
    }
    BinaryForm g = BinaryForm::gcd(le.cone, le.cubic.is_zero() ? le.cone : le.cubic);
    if (le.cubic.is_zero() || g.degree() > 0)
        return {CurveTag::Reducible, s, {}, "line through the singular point"};

    auto dir_point = [&](const FieldElem& u, const FieldElem& v) {
        Vec w(3, FieldElem::of(0, fd));
        for (int i = 0; i < 3; ++i)
            w[static_cast<size_t>(i)] = u * le.dirs_basis[0][i] + v * le.dirs_basis[1][i];
        return ProjectivePoint(std::move(w));
    };

    auto roots = le.cone.roots();
    int total = 0;
    for (auto& [r, m] : roots) total += m;
    if (total == 0) {
        if (fd.finite() && fd.p == 2)
            fail(Err::UnsupportedField, "char-2 twisted case: type exists, group realization out of scope");
        return {CurveTag::TwistedMultiplicative, s, {}, ""};
    }
    if (total == 1) {
        // one rational tangent, the other conjugate: cannot happen for a
        // quadratic cone unless the factorization is degenerate
        fail(Err::Internal, "cone with a single simple rational root");
    }
    if (roots.size() == 1) {
        std::vector<ProjectivePoint> dirs{dir_point(roots[0].first.first, roots[0].first.second)};
        return {CurveTag::Additive, s, std::move(dirs), ""};
    }
    std::vector<ProjectivePoint> dirs{dir_point(roots[0].first.first, roots[0].first.second),
                                      dir_point(roots[1].first.first, roots[1].first.second)};
    std::sort(dirs.begin(), dirs.end());
    return {CurveTag::Multiplicative, s, std::move(dirs), ""};
}

CurveType diagonal_point_type(const CubicSurface& V, const ProjectivePoint& p) {
    if (!V.diagonal_coeffs) fail(Err::NotDiagonal, "surface is not diagonal");
    const FieldDesc fd = V.field();
    if (fd.finite() && fd.p == 3) fail(Err::UnsupportedField, "char-3 diagonal surface is degenerate");
    if (!V.form.evaluate(p).is_zero()) fail(Err::NotOnSurface, p.str());
    {
        Vec g = V.form.gradient(p);
        bool nz = false;
        for (const auto& x : g) nz = nz || !x.is_zero();
        if (!nz) fail(Err::SingularPoint, p.str());
    }
    FieldElem D = FieldElem::of(1, fd);
    for (int i = 0; i < 4; ++i) D *= (*V.diagonal_coeffs)[static_cast<size_t>(i)] * p[i];
    CurveTag predicted = D.is_zero() ? CurveTag::Additive
                                     : (D.is_square() ? CurveTag::Multiplicative : CurveTag::TwistedMultiplicative);

    PlaneCubicCurve section = tangent_section(V, p);
    CurveType geo = classify_curve(section, section.to_chart(p));
    if (geo.tag == CurveTag::Reducible || geo.tag == CurveTag::MultipleSingular) {
        // Tangent sections degenerate exactly at points of the 27 geometric
        // lines.  For a diagonal form, p sits on a (possibly irrational) line
        // iff both pair-sums of some coordinate split vanish.
        const auto& a = *V.diagonal_coeffs;
        auto pair_sum = [&](int i, int j) {
            return a[static_cast<size_t>(i)] * p[i].pow(3) + a[static_cast<size_t>(j)] * p[j].pow(3);
        };
        bool on_line = (pair_sum(0, 1).is_zero() && pair_sum(2, 3).is_zero()) ||
                       (pair_sum(0, 2).is_zero() && pair_sum(1, 3).is_zero()) ||
                       (pair_sum(0, 3).is_zero() && pair_sum(1, 2).is_zero());
        if (!on_line)
            fail(Err::Internal, std::string("degenerate tangent section off the lines at ") + p.str());
        return {predicted, geo.singular_point, {},
                "point lies on a line of V; tangent section degenerate, type from the discriminant"};
    }
    if (geo.tag != predicted)
        fail(Err::Internal, std::string("discriminant predicts ") + curve_tag_name(predicted) +
                                 ", tangent cone computed " + curve_tag_name(geo.tag) + " at " + p.str());
    if (D.is_zero())
        geo.note = "D=0: tangent cone reports Additive (sec. 2.6 wording 'twisted additive' left unresolved)";
    return geo;
}

std::vector<ProjectiveLine> lines_on_surface(const CubicSurface& V) {
    const FieldDesc fd = V.field();
    std::vector<ProjectiveLine> out;
    if (fd.finite()) {
        for (const auto& l : all_projective_lines(4, fd))
            if (V.form.restrict_to_line(l.point_a(), l.point_b()).is_zero()) out.push_back(l);
        std::sort(out.begin(), out.end());
        return out;
    }
    if (!V.diagonal_coeffs) fail(Err::Unsupported, "lines over Q only for diagonal forms");
    const auto& a = *V.diagonal_coeffs;
    // pairings {i,j}|{k,l}: lines z_i + c z_j = z_k + c' z_l = 0 with
    // c^3 = a_j / a_i, c'^3 = a_l / a_k (rational cube roots when they exist)
    const std::array<std::array<int, 4>, 3> splits{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (const auto& sp : splits) {
        auto c1 = (a[static_cast<size_t>(sp[1])] / a[static_cast<size_t>(sp[0])]).cbrt();
        auto c2 = (a[static_cast<size_t>(sp[3])] / a[static_cast<size_t>(sp[2])]).cbrt();
        if (!c1 || !c2) continue;
        // parametrize: pick the two points with support on each pair
        Vec u(4, FieldElem::of(0, fd)), v(4, FieldElem::of(0, fd));
        u[static_cast<size_t>(sp[0])] = -*c1;
        u[static_cast<size_t>(sp[1])] = FieldElem::of(1, fd);
        v[static_cast<size_t>(sp[2])] = -*c2;
        v[static_cast<size_t>(sp[3])] = FieldElem::of(1, fd);
        ProjectiveLine l{ProjectivePoint(u), ProjectivePoint(v)};
        if (!V.form.restrict_to_line(l.point_a(), l.point_b()).is_zero())
            fail(Err::Internal, "diagonal line pattern failed verification");
        out.push_back(std::move(l));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjectivePoint> surface_singular_points(const CubicSurface& V) {
    if (!V.field().finite()) fail(Err::Unsupported, "surface singular scan needs a finite field");
    std::vector<ProjectivePoint> out;
    for (const auto& pt : all_projective_points(4, V.field())) {
        if (!V.form.evaluate(pt).is_zero()) continue;
        Vec g = V.form.gradient(pt);
        bool nz = false;
        for (const auto& x : g) nz = nz || !x.is_zero();
        if (!nz) out.push_back(pt);
    }
    return out;
}

} // namespace cubic

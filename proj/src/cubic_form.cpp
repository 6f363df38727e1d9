// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/cubic_form.hpp"

#include <algorithm>
#include <sstream>

namespace cubic {

CubicForm::CubicForm(int nvars, const FieldDesc& f) : nvars_(nvars), f_(f) {
    if (nvars != 3 && nvars != 4) fail(Err::DimensionMismatch, "cubic forms take 3 or 4 variables");
}

CubicForm CubicForm::diagonal(const std::array<FieldElem, 4>& a) {
    CubicForm F(4, a[0].field());
    for (int i = 0; i < 4; ++i) {
        Monomial m{0, 0, 0, 0};
        m[static_cast<size_t>(i)] = 3;
        F.set_coeff(m, a[static_cast<size_t>(i)]);
    }
    if (F.is_zero()) fail(Err::InvalidConfig, "zero diagonal form");
    return F;
}

FieldElem CubicForm::coeff(const Monomial& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? FieldElem::of(0, f_) : it->second;
}

void CubicForm::set_coeff(const Monomial& m, const FieldElem& v) {
    int deg = 0;
    for (int i = 0; i < 4; ++i) {
        if (m[static_cast<size_t>(i)] < 0 || (i >= nvars_ && m[static_cast<size_t>(i)] != 0))
            fail(Err::DimensionMismatch, "monomial outside the variable range");
        deg += m[static_cast<size_t>(i)];
    }
    if (deg != 3) fail(Err::DimensionMismatch, "monomial degree must be 3");
    if (!(v.field() == f_)) fail(Err::FieldMismatch, "coefficient field");
    if (v.is_zero()) c_.erase(m);
    else c_[m] = v;
}

void CubicForm::add_coeff(const Monomial& m, const FieldElem& v) { set_coeff(m, coeff(m) + v); }

FieldElem CubicForm::evaluate_raw(const Vec& z) const {
    if (static_cast<int>(z.size()) != nvars_) fail(Err::DimensionMismatch, "evaluate arity");
    FieldElem acc = FieldElem::of(0, f_);
    for (const auto& [m, c] : c_) {
        FieldElem t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int e = 0; e < m[static_cast<size_t>(i)]; ++e) t *= z[static_cast<size_t>(i)];
        acc += t;
    }
    return acc;
}

FieldElem CubicForm::evaluate(const ProjectivePoint& p) const {
    if (p.dim() != nvars_) fail(Err::DimensionMismatch, "point arity vs form arity");
    if (!(p.field() == f_)) fail(Err::FieldMismatch, "point field vs form field");
    return evaluate_raw(p.coords());
}

Vec CubicForm::gradient_raw(const Vec& z) const {
    if (static_cast<int>(z.size()) != nvars_) fail(Err::DimensionMismatch, "gradient arity");
    Vec g(static_cast<size_t>(nvars_), FieldElem::of(0, f_));
    for (const auto& [m, c] : c_)
        for (int i = 0; i < nvars_; ++i) {
            int e = m[static_cast<size_t>(i)];
            if (e == 0) continue;
            FieldElem t = c * FieldElem::of(e, f_);
            for (int j = 0; j < nvars_; ++j) {
                int ej = m[static_cast<size_t>(j)] - (j == i ? 1 : 0);
                for (int k = 0; k < ej; ++k) t *= z[static_cast<size_t>(j)];
            }
            g[static_cast<size_t>(i)] += t;
        }
    return g;
}

Vec CubicForm::gradient(const ProjectivePoint& p) const {
    if (p.dim() != nvars_) fail(Err::DimensionMismatch, "point arity vs form arity");
    return gradient_raw(p.coords());
}

CubicForm CubicForm::substitute(const std::vector<Vec>& cols) const {
    const int k = static_cast<int>(cols.size());
    if (k != 3 && k != 4) fail(Err::DimensionMismatch, "substitution arity");
    for (const auto& col : cols)
        if (static_cast<int>(col.size()) != nvars_) fail(Err::DimensionMismatch, "substitution column");
    // multiply out: for every monomial, the product of the row linear forms
    using Poly = std::map<Monomial, FieldElem>;
    auto mul_linear = [&](const Poly& p, int row) {
        Poly out;
        for (const auto& [m, c] : p)
            for (int j = 0; j < k; ++j) {
                const FieldElem& b = cols[static_cast<size_t>(j)][static_cast<size_t>(row)];
                if (b.is_zero()) continue;
                Monomial m2 = m;
                ++m2[static_cast<size_t>(j)];
                auto [it, fresh] = out.try_emplace(m2, c * b);
                if (!fresh) it->second += c * b;
            }
        return out;
    };
    CubicForm G(k, f_);
    for (const auto& [m, c] : c_) {
        Poly acc{{Monomial{0, 0, 0, 0}, c}};
        for (int r = 0; r < nvars_; ++r)
            for (int e = 0; e < m[static_cast<size_t>(r)]; ++e) acc = mul_linear(acc, r);
        for (const auto& [mm, cc] : acc) G.add_coeff(mm, cc);
    }
    return G;
}

BinaryForm CubicForm::restrict_to_line(const ProjectivePoint& a, const ProjectivePoint& b) const {
    // g(λ,μ) = F(λa + μb), expanded symbolically (interpolation would need char > 3)
    using P2 = std::map<std::pair<int, int>, FieldElem>; // (deg λ, deg μ)
    P2 acc{{{0, 0}, FieldElem::of(1, f_)}};
    auto mul_lin = [&](const P2& p, const FieldElem& ai, const FieldElem& bi) {
        P2 out;
        for (const auto& [dm, c] : p) {
            if (!ai.is_zero()) {
                auto key = std::make_pair(dm.first + 1, dm.second);
                auto [it, fresh] = out.try_emplace(key, c * ai);
                if (!fresh) it->second += c * ai;
            }
            if (!bi.is_zero()) {
                auto key = std::make_pair(dm.first, dm.second + 1);
                auto [it, fresh] = out.try_emplace(key, c * bi);
                if (!fresh) it->second += c * bi;
            }
        }
        return out;
    };
    std::vector<FieldElem> coeffs(4, FieldElem::of(0, f_)); // index = deg λ
    for (const auto& [m, c] : c_) {
        P2 term{{{0, 0}, c}};
        for (int i = 0; i < nvars_; ++i)
            for (int e = 0; e < m[static_cast<size_t>(i)]; ++e) term = mul_lin(term, a[i], b[i]);
        for (const auto& [dm, cc] : term) coeffs[static_cast<size_t>(dm.first)] += cc;
    }
    return BinaryForm(std::move(coeffs), f_);
}

CubicForm CubicForm::scaled(const FieldElem& s) const {
    CubicForm G(nvars_, f_);
    if (s.is_zero()) return G;
    for (const auto& [m, c] : c_) G.set_coeff(m, c * s);
    return G;
}

bool CubicForm::proportional_to(const CubicForm& o) const {
    if (nvars_ != o.nvars_ || !(f_ == o.f_)) return false;
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (c_.size() != o.c_.size()) return false;
    auto it = c_.begin();
    auto jt = o.c_.begin();
    FieldElem ratio = jt->second / it->second;
    for (; it != c_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (!(it->second * ratio == jt->second)) return false;
    }
    return true;
}

std::string CubicForm::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : c_) {
        os << (first ? "" : " + ") << "(" << c.str() << ")";
        for (int i = 0; i < nvars_; ++i) {
            int e = m[static_cast<size_t>(i)];
            if (e == 0) continue;
            os << "*z" << (i + 1);
            if (e > 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

CubicForm CubicForm::parse(const std::string& s, int nvars, const FieldDesc& f) {
    // term syntax: [coeff][*]z<i>[^e][*z<j>[^e]...], separated by + or -
    CubicForm F(nvars, f);
    std::string t;
    for (char ch : s)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    size_t i = 0;
    while (i < t.size()) {
        int sign = 1;
        while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
            if (t[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= t.size()) fail(Err::ParseError, "dangling sign in form");
        std::string num;
        while (i < t.size() && (isdigit(static_cast<unsigned char>(t[i])) || t[i] == '/')) num += t[i++];
        FieldElem c = num.empty() ? FieldElem::of(1, f) : FieldElem::parse(num, f);
        if (sign < 0) c = -c;
        Monomial m{0, 0, 0, 0};
        while (i < t.size() && (t[i] == '*' || t[i] == 'z')) {
            if (t[i] == '*') { ++i; continue; }
            ++i; // 'z'
            if (i >= t.size() || !isdigit(static_cast<unsigned char>(t[i])))
                fail(Err::ParseError, "variable index expected");
            int vi = t[i++] - '1';
            int e = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                if (i >= t.size() || !isdigit(static_cast<unsigned char>(t[i])))
                    fail(Err::ParseError, "exponent expected");
                e = t[i++] - '0';
            }
            if (vi < 0 || vi >= nvars) fail(Err::ParseError, "variable out of range");
            m[static_cast<size_t>(vi)] += e;
        }
        F.add_coeff(m, c);
    }
    return F;
}

ProjectivePoint PlaneCubicCurve::to_ambient(const ProjectivePoint& chart_pt) const {
    if (!embedded()) return chart_pt;
    Vec v(static_cast<size_t>(chart_basis[0].dim()), FieldElem::of(0, field()));
    for (int j = 0; j < 3; ++j)
        for (size_t r = 0; r < v.size(); ++r)
            v[r] += chart_pt[j] * chart_basis[static_cast<size_t>(j)][static_cast<int>(r)];
    return ProjectivePoint(std::move(v));
}

ProjectivePoint PlaneCubicCurve::to_chart(const ProjectivePoint& ambient_pt) const {
    if (!embedded()) return ambient_pt;
    return ProjectivePoint(chart_coords(ambient_pt, chart_basis));
}

PlaneCubicCurve PlaneCubicCurve::plain(CubicForm f3) {
    if (f3.nvars() != 3) fail(Err::DimensionMismatch, "plane curve takes a 3-variable form");
    if (f3.is_zero()) fail(Err::InvalidConfig, "zero form");
    return PlaneCubicCurve{std::nullopt, {}, std::move(f3)};
}

CubicSurface CubicSurface::diagonal(const std::array<FieldElem, 4>& a) {
    return CubicSurface{CubicForm::diagonal(a), a};
}

CubicSurface CubicSurface::general(CubicForm f4) {
    if (f4.nvars() != 4) fail(Err::DimensionMismatch, "surface takes a 4-variable form");
    if (f4.is_zero()) fail(Err::InvalidConfig, "zero form");
    return CubicSurface{std::move(f4), std::nullopt};
}

FieldElem evaluate(const CubicForm& F, const ProjectivePoint& p) { return F.evaluate(p); }
Vec gradient(const CubicForm& F, const ProjectivePoint& p) { return F.gradient(p); }

ProjectivePlane tangent_plane(const CubicSurface& V, const ProjectivePoint& p) {
    if (!V.form.evaluate(p).is_zero()) fail(Err::NotOnSurface, p.str());
    Vec g = V.form.gradient(p);
    bool nz = false;
    for (const auto& x : g) nz = nz || !x.is_zero();
    if (!nz) fail(Err::SingularPoint, "gradient vanishes at " + p.str());
    return ProjectivePlane(std::move(g));
}

PlaneCubicCurve restrict_to_plane(const CubicForm& F, const ProjectivePlane& P,
                                  const std::vector<ProjectivePoint>& basis) {
    if (F.nvars() != 4) fail(Err::DimensionMismatch, "restriction is from P^3");
    if (basis.size() != 3) fail(Err::DegenerateBasis, "need exactly three basis points");
    for (const auto& b : basis)
        if (!P.contains(b)) fail(Err::DegenerateBasis, "basis point off the plane: " + b.str());
    if (rank_of({basis[0].coords(), basis[1].coords(), basis[2].coords()}) != 3)
        fail(Err::DegenerateBasis, "basis points are dependent");
    CubicForm G = F.substitute({basis[0].coords(), basis[1].coords(), basis[2].coords()});
    if (G.is_zero()) fail(Err::ZeroRestriction, "plane lies inside the surface");
    return PlaneCubicCurve{P, basis, std::move(G)};
}

PlaneCubicCurve tangent_section(const CubicSurface& V, const ProjectivePoint& p) {
    ProjectivePlane P = tangent_plane(V, p);
    return restrict_to_plane(V.form, P, plane_basis(P));
}

} // namespace cubic

// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/projective.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cubic {

Vec canonical_coords(Vec v) {
    if (v.empty()) fail(Err::ZeroVector, "empty coordinate vector");
    const FieldDesc f = v[0].field();
    for (const auto& x : v)
        if (!(x.field() == f)) fail(Err::FieldMismatch, "mixed fields in coordinates");
    int first = -1;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) { first = static_cast<int>(i); break; }
    if (first < 0) fail(Err::ZeroVector, "all coordinates zero");

    if (f.finite()) {
        FieldElem inv = v[static_cast<size_t>(first)].inverse();
        for (auto& x : v) x *= inv;
        return v;
    }
    // Over Q: clear denominators, divide by gcd, make first nonzero positive.
    mpz_class l(1);
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rat().get_den().get_mpz_t());
    mpz_class g(0);
    std::vector<mpz_class> ints;
    ints.reserve(v.size());
    for (const auto& x : v) {
        mpz_class n = x.rat().get_num() * (l / x.rat().get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        ints.push_back(n);
    }
    if (ints[static_cast<size_t>(first)] < 0) g = -g;
    for (size_t i = 0; i < v.size(); ++i) v[i] = FieldElem::rational(mpq_class(ints[i] / g));
    return v;
}

ProjectivePoint::ProjectivePoint(Vec coords) : c_(canonical_coords(std::move(coords))) {
    if (c_.size() != 3 && c_.size() != 4)
        fail(Err::DimensionMismatch, "points live in P^2 or P^3");
}

std::strong_ordering ProjectivePoint::operator<=>(const ProjectivePoint& o) const {
    return ProjectivePlane::cmp_vec(c_, o.c_);
}

std::string ProjectivePoint::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? ":" : "") << c_[i].str();
    os << ')';
    return os.str();
}

ProjectivePoint ProjectivePoint::parse(const std::string& s, const FieldDesc& f) {
    std::string t = s;
    if (!t.empty() && t.front() == '(') t.erase(t.begin());
    if (!t.empty() && t.back() == ')') t.pop_back();
    Vec v;
    std::string cur;
    for (char ch : t + ":") {
        if (ch == ':') {
            if (cur.empty()) fail(Err::ParseError, "bad point '" + s + "'");
            v.push_back(FieldElem::parse(cur, f));
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (v.size() != 3 && v.size() != 4) fail(Err::ParseError, "bad point '" + s + "'");
    return ProjectivePoint(std::move(v));
}

std::strong_ordering ProjectivePlane::cmp_vec(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        auto c = a[i] <=> b[i];
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

ProjectivePlane::ProjectivePlane(Vec coeffs) : c_(canonical_coords(std::move(coeffs))) {}

bool ProjectivePlane::contains(const ProjectivePoint& p) const {
    if (p.dim() != dim()) fail(Err::DimensionMismatch, "plane/point dimension");
    FieldElem s = FieldElem::of(0, field());
    for (int i = 0; i < dim(); ++i) s += c_[static_cast<size_t>(i)] * p[i];
    return s.is_zero();
}

std::string ProjectivePlane::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? ":" : "") << c_[i].str();
    os << ')';
    return os.str();
}

int rank_of(std::vector<Vec> rows) { return static_cast<int>(rref_of(std::move(rows)).size()); }

std::vector<Vec> rref_of(std::vector<Vec> rows) {
    if (rows.empty()) return rows;
    const size_t n = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        FieldElem inv = rows[r][c].inverse();
        for (auto& x : rows[r]) x *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            FieldElem fctr = rows[i][c];
            for (size_t j = 0; j < n; ++j) rows[i][j] -= fctr * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::vector<Vec> null_space(const std::vector<Vec>& rows, int ncols) {
    const FieldDesc f = rows.empty() ? FieldDesc::Q() : rows[0][0].field();
    auto rr = rref_of(rows);
    std::vector<int> pivot_col;
    for (const auto& row : rr)
        for (int c = 0; c < ncols; ++c)
            if (!row[static_cast<size_t>(c)].is_zero()) { pivot_col.push_back(c); break; }
    std::vector<Vec> basis;
    for (int c = 0; c < ncols; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
        Vec v(static_cast<size_t>(ncols), FieldElem::of(0, f));
        v[static_cast<size_t>(c)] = FieldElem::of(1, f);
        for (size_t i = 0; i < rr.size(); ++i)
            v[static_cast<size_t>(pivot_col[i])] = -rr[i][static_cast<size_t>(c)];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> null_vector(const std::vector<Vec>& rows, int ncols) {
    auto b = null_space(rows, ncols);
    if (b.size() != 1) return std::nullopt;
    return canonical_coords(b[0]);
}

ProjectiveLine::ProjectiveLine(const ProjectivePoint& a, const ProjectivePoint& b) : a_(a), b_(b) {
    if (a.dim() != b.dim()) fail(Err::DimensionMismatch, "line span");
    if (a == b) fail(Err::CoincidentPoints, "line through coincident points " + a.str());
    rref_ = rref_of({a.coords(), b.coords()});
}

ProjectivePoint ProjectiveLine::at(const FieldElem& lambda, const FieldElem& mu) const {
    Vec v;
    v.reserve(static_cast<size_t>(dim()));
    for (int i = 0; i < dim(); ++i) v.push_back(lambda * a_[i] + mu * b_[i]);
    return ProjectivePoint(std::move(v));
}

bool ProjectiveLine::contains(const ProjectivePoint& p) const {
    if (p.dim() != dim()) fail(Err::DimensionMismatch, "line/point dimension");
    return rank_of({rref_[0], rref_[1], p.coords()}) == 2;
}

std::vector<ProjectivePoint> ProjectiveLine::points() const {
    if (!field().finite()) fail(Err::Unsupported, "point enumeration needs a finite field");
    std::vector<ProjectivePoint> out;
    const FieldDesc f = field();
    out.push_back(at(FieldElem::of(0, f), FieldElem::of(1, f)));
    for (std::uint32_t t = 0; t < f.p; ++t)
        out.push_back(at(FieldElem::of(1, f), FieldElem::modp(t, f)));
    std::sort(out.begin(), out.end());
    return out;
}

ProjectivePlane ProjectiveLine::dual() const {
    if (dim() != 3) fail(Err::DimensionMismatch, "dual() is for lines of P^2");
    auto nv = null_vector({a_.coords(), b_.coords()}, 3);
    return ProjectivePlane(*nv);
}

std::strong_ordering ProjectiveLine::operator<=>(const ProjectiveLine& o) const {
    if (rref_.size() != o.rref_.size()) return rref_.size() <=> o.rref_.size();
    for (size_t i = 0; i < rref_.size(); ++i) {
        auto c = ProjectivePlane::cmp_vec(rref_[i], o.rref_[i]);
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

std::string ProjectiveLine::str() const { return a_.str() + "v" + b_.str(); }

ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q) {
    return ProjectiveLine(p, q);
}

ProjectivePlane plane_through(const ProjectivePoint& p, const ProjectivePoint& q,
                              const ProjectivePoint& r) {
    if (p.dim() != 4 || q.dim() != 4 || r.dim() != 4)
        fail(Err::DimensionMismatch, "plane_through needs points of P^3");
    auto nv = null_vector({p.coords(), q.coords(), r.coords()}, 4);
    if (!nv) fail(Err::CollinearInput, "three points span rank <= 2");
    return ProjectivePlane(*nv);
}

std::optional<ProjectivePoint> meet_line_plane(const ProjectiveLine& l, const ProjectivePlane& h) {
    const FieldDesc f = l.field();
    FieldElem da = FieldElem::of(0, f), db = da;
    for (int i = 0; i < l.dim(); ++i) {
        da += h.coeffs()[static_cast<size_t>(i)] * l.point_a()[i];
        db += h.coeffs()[static_cast<size_t>(i)] * l.point_b()[i];
    }
    if (da.is_zero() && db.is_zero()) return std::nullopt; // line inside the plane
    // lambda*da + mu*db = 0
    return l.at(db, -da);
}

ProjectiveLine meet_planes(const ProjectivePlane& a, const ProjectivePlane& b) {
    if (a == b) fail(Err::CoincidentPoints, "meet of identical planes");
    auto ns = null_space({a.coeffs(), b.coeffs()}, 4);
    if (ns.size() != 2) fail(Err::Internal, "plane meet rank");
    return ProjectiveLine(ProjectivePoint(ns[0]), ProjectivePoint(ns[1]));
}

std::vector<ProjectivePoint> plane_basis(const ProjectivePlane& h) {
    auto ns = null_space({h.coeffs()}, h.dim());
    std::vector<ProjectivePoint> b;
    b.reserve(ns.size());
    for (auto& v : ns) b.emplace_back(std::move(v));
    if (b.size() != static_cast<size_t>(h.dim()) - 1) fail(Err::Internal, "plane basis rank");
    return b;
}

Vec chart_coords(const ProjectivePoint& p, const std::vector<ProjectivePoint>& basis) {
    // Solve p = sum u_i b_i by elimination on the transposed system.
    const FieldDesc f = p.field();
    const int n = p.dim(), k = static_cast<int>(basis.size());
    std::vector<Vec> rows; // [B | p] with columns b_i
    for (int r = 0; r < n; ++r) {
        Vec row;
        for (int i = 0; i < k; ++i) row.push_back(basis[static_cast<size_t>(i)][r]);
        row.push_back(p[r]);
        rows.push_back(std::move(row));
    }
    auto rr = rref_of(rows);
    Vec u(static_cast<size_t>(k), FieldElem::of(0, f));
    for (const auto& row : rr) {
        int lead = -1;
        for (int c = 0; c <= k; ++c)
            if (!row[static_cast<size_t>(c)].is_zero()) { lead = c; break; }
        if (lead == k) fail(Err::DegenerateBasis, "point outside the span of the basis");
        if (lead >= 0) u[static_cast<size_t>(lead)] = row[static_cast<size_t>(k)];
    }
    return u;
}

std::vector<ProjectivePoint> all_projective_points(int ncoords, const FieldDesc& f) {
    if (!f.finite()) fail(Err::Unsupported, "enumeration needs a finite field");
    std::vector<ProjectivePoint> out;
    Vec v(static_cast<size_t>(ncoords), FieldElem::of(0, f));
    // canonical reps: first nonzero coordinate is 1
    for (int lead = ncoords - 1; lead >= 0; --lead) {
        std::vector<std::uint32_t> tail(static_cast<size_t>(ncoords - lead - 1), 0);
        while (true) {
            for (int i = 0; i < ncoords; ++i) v[static_cast<size_t>(i)] = FieldElem::of(0, f);
            v[static_cast<size_t>(lead)] = FieldElem::of(1, f);
            for (size_t i = 0; i < tail.size(); ++i)
                v[static_cast<size_t>(lead) + 1 + i] = FieldElem::modp(tail[i], f);
            out.push_back(ProjectivePoint(v));
            size_t j = tail.size();
            while (j > 0 && tail[j - 1] + 1 == f.p) tail[--j] = 0;
            if (j == 0) break;
            ++tail[j - 1];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjectiveLine> all_projective_lines(int ncoords, const FieldDesc& f) {
    auto pts = all_projective_points(ncoords, f);
    std::vector<ProjectiveLine> lines;
    std::set<std::vector<Vec>> seen;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            auto key = rref_of({pts[i].coords(), pts[j].coords()});
            if (seen.insert(std::move(key)).second) lines.emplace_back(pts[i], pts[j]);
        }
    return lines;
}

std::vector<ProjectivePlane> all_projective_planes(int ncoords, const FieldDesc& f) {
    auto duals = all_projective_points(ncoords, f);
    std::vector<ProjectivePlane> planes;
    planes.reserve(duals.size());
    for (const auto& d : duals) planes.emplace_back(d.coords());
    return planes;
}

} // namespace cubic

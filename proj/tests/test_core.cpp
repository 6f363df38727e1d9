// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubic/projective.hpp"

using namespace cubic;

namespace {

ProjectivePoint qp(const std::string& s) { return ProjectivePoint::parse(s, FieldDesc::Q()); }

} // namespace

TEST_CASE("field axioms hold exhaustively over small prime fields") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        FieldDesc f = FieldDesc::Fp(p);
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b) {
                FieldElem x = FieldElem::modp(a, f), y = FieldElem::modp(b, f);
                CHECK(x + y == y + x);
                CHECK(x * y == y * x);
                if (!y.is_zero()) CHECK((x / y) * y == x);
                for (std::uint32_t c = 0; c < p; ++c) {
                    FieldElem z = FieldElem::modp(c, f);
                    CHECK((x + y) + z == x + (y + z));
                    CHECK((x * y) * z == x * (y * z));
                    CHECK(x * (y + z) == x * y + x * z);
                }
            }
    }
}

TEST_CASE("rational arithmetic is exact and canonical") {
    FieldElem a = FieldElem::rational(2, 4);
    CHECK(a.rat().get_num() == 1);
    CHECK(a.rat().get_den() == 2);
    CHECK(FieldElem::rational(-1, -3) == FieldElem::rational(1, 3));
    CHECK((FieldElem::rational(1, 3) + FieldElem::rational(1, 6)).rat() == mpq_class(1, 2));
    CHECK_THROWS_AS((void)(FieldElem::rational(1) + FieldElem::modp(1, FieldDesc::Fp(5))), Error);
}

TEST_CASE("square and cube root detection") {
    CHECK(FieldElem::rational(49, 4).is_square());
    CHECK(!FieldElem::rational(24).is_square());
    CHECK(FieldElem::rational(-8).cbrt().value() == FieldElem::rational(-2));
    CHECK(!FieldElem::rational(7).cbrt().has_value());
    FieldDesc f7 = FieldDesc::Fp(7);
    int squares = 0;
    for (int i = 1; i < 7; ++i)
        if (FieldElem::modp(i, f7).is_square()) ++squares;
    CHECK(squares == 3);
    for (int i = 0; i < 7; ++i) {
        FieldElem x = FieldElem::modp(i, f7);
        if (auto r = x.sqrt()) CHECK(*r * *r == x);
    }
}

TEST_CASE("canonicalize: gcd division and sign rule") {
    CHECK(qp("(2:-2:-2:2)") == qp("(1:-1:-1:1)"));
    CHECK(qp("(2:-2:-2:2)").str() == "(1:-1:-1:1)");
    CHECK(qp("(0:3:6:9)").str() == "(0:1:2:3)");
    CHECK_THROWS_AS(qp("(0:0:0:0)"), Error);
    // rational inputs are cleared to integers
    CHECK(ProjectivePoint(Vec{FieldElem::rational(1, 2), FieldElem::rational(1, 3),
                              FieldElem::rational(0), FieldElem::rational(1)})
              .str() == "(3:2:0:6)");
}

TEST_CASE("canonicalize is idempotent and kills the scalar action") {
    FieldDesc f5 = FieldDesc::Fp(5);
    for (const auto& pt : all_projective_points(4, f5)) {
        for (std::uint32_t c = 1; c < 5; ++c) {
            Vec scaled = pt.coords();
            for (auto& x : scaled) x *= FieldElem::modp(c, f5);
            CHECK(ProjectivePoint(scaled) == pt);
        }
        CHECK(ProjectivePoint(pt.coords()) == pt);
    }
    CHECK(all_projective_points(4, f5).size() == 156); // (5^4-1)/(5-1)
    CHECK(all_projective_points(3, f5).size() == 31);
}

TEST_CASE("point equality is an equivalence consistent with projective equivalence over F_7") {
    FieldDesc f7 = FieldDesc::Fp(7);
    auto pts = all_projective_points(3, f7);
    CHECK(pts.size() == 57);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) CHECK(!(pts[i] == pts[j]));
}

TEST_CASE("line_through: span, parametrization, symmetry") {
    auto p = qp("(0:0:1:-1)"), q = qp("(1:-1:0:0)");
    ProjectiveLine l = line_through(p, q);
    // parametrization (λ:μ) -> (μ:-μ:λ:-λ)
    FieldElem lam = FieldElem::rational(3), mu = FieldElem::rational(5);
    ProjectivePoint pt = l.at(lam, mu);
    CHECK(pt == qp("(5:-5:3:-3)"));
    CHECK(l.contains(p));
    CHECK(l.contains(q));
    CHECK(line_through(q, p) == l);
    CHECK_THROWS_AS(line_through(qp("(1:0:0:0)"), qp("(1:0:0:0)")), Error);

    // coordinate axes of the plane: line z3 = 0
    FieldDesc Q = FieldDesc::Q();
    auto a = ProjectivePoint::parse("(1:0:0)", Q), b = ProjectivePoint::parse("(0:1:0)", Q);
    CHECK(line_through(a, b).dual() == ProjectivePlane(Vec{FieldElem::rational(0), FieldElem::rational(0), FieldElem::rational(1)}));
}

TEST_CASE("plane_through: coordinate plane, collinear error, derived null space") {
    auto e1 = qp("(1:0:0:0)"), e2 = qp("(0:1:0:0)"), e3 = qp("(0:0:1:0)");
    ProjectivePlane pl = plane_through(e1, e2, e3);
    CHECK(pl.coeffs()[3].is_one());
    for (int i = 0; i < 3; ++i) CHECK(pl.coeffs()[static_cast<size_t>(i)].is_zero());

    CHECK_THROWS_AS(plane_through(qp("(1:1:0:0)"), qp("(2:2:0:0)"), qp("(1:0:0:0)")), Error);
    auto mid = line_through(e1, e2).at(FieldElem::rational(1), FieldElem::rational(1));
    CHECK_THROWS_AS(plane_through(e1, e2, mid), Error);

    // frozen from an independent null-space computation
    ProjectivePlane d = plane_through(qp("(1:-1:-1:1)"), qp("(0:1:1:-1)"), qp("(1:1:-1:0)"));
    CHECK(d.str() == "(0:1:1:2)");
    CHECK(d.contains(qp("(1:-1:-1:1)")));
}

TEST_CASE("meets and charts") {
    FieldDesc f5 = FieldDesc::Fp(5);
    ProjectivePlane h(Vec{FieldElem::of(1, f5), FieldElem::of(2, f5), FieldElem::of(0, f5), FieldElem::of(4, f5)});
    auto basis = plane_basis(h);
    REQUIRE(basis.size() == 3);
    for (const auto& b : basis) CHECK(h.contains(b));
    // chart coordinates invert the basis combination
    Vec u{FieldElem::of(1, f5), FieldElem::of(3, f5), FieldElem::of(2, f5)};
    Vec amb(4, FieldElem::of(0, f5));
    for (int j = 0; j < 3; ++j)
        for (int r = 0; r < 4; ++r) amb[static_cast<size_t>(r)] += u[static_cast<size_t>(j)] * basis[static_cast<size_t>(j)][r];
    ProjectivePoint P(amb);
    Vec back = chart_coords(P, basis);
    CHECK(ProjectivePoint(back) == ProjectivePoint(u));

    // meet of two planes lies in both
    ProjectivePlane h2(Vec{FieldElem::of(0, f5), FieldElem::of(1, f5), FieldElem::of(1, f5), FieldElem::of(1, f5)});
    ProjectiveLine l = meet_planes(h, h2);
    CHECK(h.contains(l.point_a()));
    CHECK(h2.contains(l.point_a()));
    CHECK(h.contains(l.point_b()));
    CHECK(h2.contains(l.point_b()));
    CHECK(l.points().size() == 6); // p + 1
}

TEST_CASE("line enumeration over F_3 matches the Gaussian count") {
    FieldDesc f3 = FieldDesc::Fp(3);
    // lines of P^3(F_3): (p^2+1)(p^2+p+1) = 130
    CHECK(all_projective_lines(4, f3).size() == 130);
    CHECK(all_projective_lines(3, f3).size() == 13);
}

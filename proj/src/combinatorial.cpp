// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/combinatorial.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace cubic {

CombStructure::CombStructure(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() > 65000) fail(Err::Unsupported, "structure too large");
}

void CombStructure::add_collinear(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    do L_.insert(t);
    while (std::next_permutation(t.begin(), t.end()));
}

void CombStructure::add_collinear_raw(int a, int b, int c) { L_.insert({a, b, c}); }
void CombStructure::remove_collinear_raw(int a, int b, int c) { L_.erase({a, b, c}); }

bool CombStructure::collinear(int a, int b, int c) const { return L_.count({a, b, c}) > 0; }

std::vector<int> CombStructure::thirds(int a, int b) const {
    std::vector<int> out;
    auto it = L_.lower_bound({a, b, std::numeric_limits<int>::min()});
    for (; it != L_.end() && (*it)[0] == a && (*it)[1] == b; ++it) out.push_back((*it)[2]);
    return out;
}

void CombStructure::add_section(std::set<int> section) {
    if (std::find(P_.begin(), P_.end(), section) == P_.end()) P_.push_back(std::move(section));
}

void CombStructure::remove_section(const std::set<int>& section) {
    P_.erase(std::remove(P_.begin(), P_.end(), section), P_.end());
}

std::vector<std::array<int, 3>> CombStructure::cycles() const {
    std::set<std::array<int, 3>> seen;
    for (const auto& t : L_) {
        std::array<int, 3> s = t;
        std::sort(s.begin(), s.end());
        seen.insert(s);
    }
    return {seen.begin(), seen.end()};
}

std::vector<std::set<int>> CombStructure::lines() const {
    std::vector<std::set<int>> out;
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b) {
            auto ts = thirds(a, b);
            std::set<int> uniq(ts.begin(), ts.end());
            if (uniq.size() < 2) continue;
            std::set<int> l = uniq;
            l.insert(a);
            l.insert(b);
            if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
        }
    return out;
}

std::set<int> CombStructure::tangent_section_set(int p) const {
    std::set<int> c{p};
    for (int q : thirds(p, p)) c.insert(q);
    return c;
}

CombStructure from_geometric(const CubicSurface& V) {
    const FieldDesc f = V.field();
    if (!f.finite()) fail(Err::Unsupported, "geometric structures are built over F_p");
    if (!surface_singular_points(V).empty())
        fail(Err::SingularSurface, "surface has singular rational points");

    // S: all rational points (smooth by the check above)
    std::vector<ProjectivePoint> pts;
    for (const auto& pt : all_projective_points(4, f))
        if (V.form.evaluate(pt).is_zero()) pts.push_back(pt);
    std::vector<std::string> labels;
    labels.reserve(pts.size());
    for (const auto& p : pts) labels.push_back(p.str());
    CombStructure cs(std::move(labels));
    auto index_of = [&](const ProjectivePoint& p) {
        auto it = std::lower_bound(pts.begin(), pts.end(), p);
        if (it == pts.end() || !(*it == p)) fail(Err::Internal, "point not in S");
        return static_cast<int>(it - pts.begin());
    };

    // L from every line of P^3(F_p)
    for (const auto& line : all_projective_lines(4, f)) {
        BinaryForm g = V.form.restrict_to_line(line.point_a(), line.point_b());
        if (g.is_zero()) {
            std::vector<int> on;
            for (const auto& q : line.points()) on.push_back(index_of(q));
            for (int a : on)
                for (int b : on)
                    for (int c : on) cs.add_collinear_raw(a, b, c);
            continue;
        }
        auto roots = g.roots();
        int total = 0;
        for (auto& [uv, m] : roots) total += m;
        if (total != 3) continue; // cycle not fully rational
        std::vector<int> cyc;
        for (auto& [uv, m] : roots) {
            ProjectivePoint q = line.at(uv.first, uv.second);
            for (int k = 0; k < m; ++k) cyc.push_back(index_of(q));
        }
        cs.add_collinear(cyc[0], cyc[1], cyc[2]);
    }

    // P per 3.2.1(b)
    std::vector<std::set<int>> tangent_secs;
    std::vector<ProjectiveLine> branch_tangents;
    for (size_t i = 0; i < pts.size(); ++i) {
        PlaneCubicCurve sec = tangent_section(V, pts[i]);
        CurveType t = classify_curve(sec, sec.to_chart(pts[i]));
        if (t.tag == CurveTag::Multiplicative)
            for (const auto& dir : t.tangent_dirs)
                branch_tangents.emplace_back(pts[i], sec.to_ambient(dir));
    }
    for (const auto& plane : all_projective_planes(4, f)) {
        std::set<int> c;
        for (size_t i = 0; i < pts.size(); ++i)
            if (plane.contains(pts[i])) c.insert(static_cast<int>(i));
        bool keep = c.size() >= 2;
        if (!keep)
            for (size_t i = 0; i < pts.size() && !keep; ++i)
                keep = c.count(static_cast<int>(i)) && tangent_plane(V, pts[i]) == plane;
        if (!keep)
            for (const auto& bt : branch_tangents)
                if (plane.contains(bt.point_a()) && plane.contains(bt.point_b())) {
                    keep = true;
                    break;
                }
        if (keep && !c.empty()) cs.add_section(std::move(c));
    }
    return cs;
}

AxiomReport check_collinearity_axioms(const CombStructure& cs) {
    AxiomReport rep;
    const int n = cs.size();
    auto name = [&](int i) { return cs.labels()[static_cast<size_t>(i)]; };

    for (int a = 0; a < n && rep.totality.pass; ++a)
        for (int b = a; b < n && rep.totality.pass; ++b)
            if (cs.thirds(a, b).empty()) {
                rep.totality.pass = false;
                rep.totality.witness = "no third point for (" + name(a) + ", " + name(b) + ")";
            }

    // strict triples: unique third, pairwise distinct entries
    auto strict = [&](int a, int b, int c) {
        if (a == b || b == c || a == c) return false;
        auto ts = cs.thirds(a, b);
        std::set<int> uniq(ts.begin(), ts.end());
        return uniq.size() == 1 && *uniq.begin() == c;
    };
    for (const auto& t : cs.triples()) {
        if (!strict(t[0], t[1], t[2])) continue;
        std::array<int, 3> s = t;
        std::sort(s.begin(), s.end());
        do {
            if (!cs.collinear(s[0], s[1], s[2]) || !strict(s[0], s[1], s[2])) {
                rep.strict_symmetry.pass = false;
                rep.strict_symmetry.witness = "(" + name(s[0]) + ", " + name(s[1]) + ", " + name(s[2]) +
                                              ") missing from the strict relation";
                break;
            }
        } while (std::next_permutation(s.begin(), s.end()));
        if (!rep.strict_symmetry.pass) break;
    }

    for (const auto& l : cs.lines()) {
        for (int a : l)
            for (int b : l)
                for (int c : l)
                    if (!cs.collinear(a, b, c)) {
                        rep.line_closure.pass = false;
                        rep.line_closure.witness = "line " + name(*l.begin()) + "...: (" + name(a) + ", " +
                                                   name(b) + ", " + name(c) + ") not collinear";
                        goto done;
                    }
    }
done:
    return rep;
}

namespace {

// Abelian symmetric quasigroup induced on a carrier subset.  Off-diagonal
// compositions come from L directly and must be unique inside the carrier.
// Diagonal compositions cannot be read off L alone (an inflectional line
// contributes (a,a,a) next to the section's own (a,a,x)), so they are derived
// from the involution property: a∘a is the unique b with a∘b = a, or a itself
// when no such b exists; the result must still be backed by L.
std::optional<QuasigroupView> induced_quasigroup(const CombStructure& cs, const std::vector<int>& carrier,
                                                 std::string* why) {
    const int n = static_cast<int>(carrier.size());
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) pos[carrier[static_cast<size_t>(i)]] = i;
    auto label = [&](int i) { return cs.labels()[static_cast<size_t>(carrier[static_cast<size_t>(i)])]; };
    std::vector<std::vector<int>> table(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::set<int> inside;
            for (int r : cs.thirds(carrier[static_cast<size_t>(i)], carrier[static_cast<size_t>(j)]))
                if (pos.count(r)) inside.insert(r);
            if (inside.size() != 1) {
                if (why)
                    *why = "pair (" + label(i) + ", " + label(j) + ") has " +
                           std::to_string(inside.size()) + " compositions inside the section";
                return std::nullopt;
            }
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] = pos[*inside.begin()];
            table[static_cast<size_t>(j)][static_cast<size_t>(i)] = pos[*inside.begin()];
        }
    for (int i = 0; i < n; ++i) {
        std::vector<int> fixed;
        for (int j = 0; j < n; ++j)
            if (j != i && table[static_cast<size_t>(i)][static_cast<size_t>(j)] == i) fixed.push_back(j);
        if (fixed.size() > 1) {
            if (why) *why = "two tangency partners for " + label(i);
            return std::nullopt;
        }
        int diag = fixed.empty() ? i : fixed[0];
        if (!cs.collinear(carrier[static_cast<size_t>(i)], carrier[static_cast<size_t>(i)],
                          carrier[static_cast<size_t>(diag)])) {
            if (why) *why = "derived tangent composition " + label(i) + "∘" + label(i) + " = " + label(diag) +
                            " is not collinear";
            return std::nullopt;
        }
        table[static_cast<size_t>(i)][static_cast<size_t>(i)] = diag;
    }
    return QuasigroupView::from_table(std::move(table));
}

} // namespace

AxiomReport check_plane_axioms(const CombStructure& cs) {
    AxiomReport rep = check_collinearity_axioms(cs);
    auto name = [&](int i) { return cs.labels()[static_cast<size_t>(i)]; };
    if (!rep.collinearity_pass()) return rep;
    const int n = cs.size();
    auto lines = cs.lines();

    // 3.3.1: tangent sections belong to P
    std::vector<std::set<int>> tangent_secs(static_cast<size_t>(n));
    for (int p = 0; p < n && rep.tangent_sections.pass; ++p) {
        tangent_secs[static_cast<size_t>(p)] = cs.tangent_section_set(p);
        const auto& c = tangent_secs[static_cast<size_t>(p)];
        if (std::find(cs.sections().begin(), cs.sections().end(), c) == cs.sections().end()) {
            rep.tangent_sections.pass = false;
            rep.tangent_sections.witness = "C_p for p = " + name(p) + " is not a plane section";
        }
    }

    // 3.3.2: abelian symmetric quasigroups on line-free sections
    for (const auto& c : cs.sections()) {
        if (!rep.composition.pass) break;
        bool has_line = false;
        for (const auto& l : lines)
            has_line = has_line || std::includes(c.begin(), c.end(), l.begin(), l.end());
        if (has_line) continue; // skipped per the 3.3.2 precondition
        // tangent or not: check the induced structure on C \ {p} for every p
        // with C_p = C, and on all of C otherwise
        std::vector<std::vector<int>> carriers;
        bool tangent = false;
        for (int p = 0; p < n; ++p)
            if (tangent_secs[static_cast<size_t>(p)] == c) {
                tangent = true;
                std::vector<int> carrier;
                for (int x : c)
                    if (x != p) carrier.push_back(x);
                carriers.push_back(std::move(carrier));
            }
        if (!tangent) carriers.push_back({c.begin(), c.end()});
        for (auto& carrier : carriers) {
            if (carrier.empty()) continue;
            std::string why;
            auto qg = induced_quasigroup(cs, carrier, &why);
            if (!qg) {
                rep.composition.pass = false;
                rep.composition.witness = why;
                break;
            }
            std::string law_witness;
            if (!qg->satisfies_quasigroup_laws(&law_witness)) {
                rep.composition.pass = false;
                rep.composition.witness = "section law: " + law_witness;
                break;
            }
            AbelianReport ab = check_abelian(*qg, true);
            if (!ab.pass) {
                auto [a, b, cc] = *ab.violation;
                rep.composition.pass = false;
                rep.composition.witness = "(t_p t_q t_r)^2 != 1 on a section at indices (" +
                                          std::to_string(a) + "," + std::to_string(b) + "," +
                                          std::to_string(cc) + ")";
                break;
            }
        }
    }

    // 3.3.3: pencil partitions
    for (const auto& lam : cs.cycles()) {
        if (!rep.pencils.pass) break;
        std::set<int> base{lam[0], lam[1], lam[2]};
        if (base.size() < 2) continue; // need at least two distinct points
        std::optional<std::set<int>> on_line;
        for (const auto& l : lines)
            if (std::includes(l.begin(), l.end(), base.begin(), base.end())) {
                on_line = l;
                break;
            }
        const std::set<int>& excluded = on_line ? *on_line : base;
        std::vector<int> cover(static_cast<size_t>(n), 0);
        for (const auto& c : cs.sections()) {
            bool in_pencil = true;
            for (int b : base) in_pencil = in_pencil && c.count(b);
            if (!in_pencil) continue;
            for (int x : c)
                if (!excluded.count(x)) ++cover[static_cast<size_t>(x)];
        }
        for (int x = 0; x < n && rep.pencils.pass; ++x) {
            if (excluded.count(x)) continue;
            if (cover[static_cast<size_t>(x)] != 1) {
                rep.pencils.pass = false;
                rep.pencils.witness = "pencil over (" + name(lam[0]) + "," + name(lam[1]) + "," +
                                      name(lam[2]) + "): point " + name(x) + " covered " +
                                      std::to_string(cover[static_cast<size_t>(x)]) + " times";
            }
        }
    }
    return rep;
}

MuConfiguration detect_cm_ca(const CombStructure& cs, int p_m, int p_a) {
    auto name = [&](int i) { return cs.labels()[static_cast<size_t>(i)]; };
    if (p_m == p_a) fail(Err::InvalidConfig, "p_m and p_a coincide");
    for (const auto& l : cs.lines())
        if (l.count(p_m) && l.count(p_a)) fail(Err::InvalidConfig, "p_m and p_a lie on a line in S");

    auto ts = cs.thirds(p_m, p_a);
    std::set<int> uniq(ts.begin(), ts.end());
    if (uniq.size() != 1) fail(Err::InvalidConfig, "no strict third point for (p_m, p_a)");
    int r = *uniq.begin();

    std::set<int> c_m = cs.tangent_section_set(p_m), c_a = cs.tangent_section_set(p_a);
    if (c_m.count(p_a) || c_a.count(p_m))
        fail(Err::InvalidConfig, "tangent sections contain the opposite base point");

    // Def. 3.5.1(iii)
    std::set<int> meet;
    for (int x : c_m)
        if (c_a.count(x)) meet.insert(x);
    if (meet.size() != 3)
        fail(Err::IntersectionNotThreePoints,
             "C_pm ∩ C_pa has " + std::to_string(meet.size()) + " points");

    // pencil over (p_m, p_a, r) and the per-plane pairing
    std::vector<int> m_pts, a_pts; // carriers without the vertex
    for (int x : c_m)
        if (x != p_m && x != r) m_pts.push_back(x);
    for (int x : c_a)
        if (x != p_a && x != r) a_pts.push_back(x);

    std::map<int, int> pair_of_a; // a-point -> m-point or -1 for p_m
    std::optional<int> partner_of_pa;
    for (const auto& c : cs.sections()) {
        if (!c.count(p_m) || !c.count(p_a) || !c.count(r)) continue;
        std::vector<int> mc, ac;
        for (int x : m_pts)
            if (c.count(x)) mc.push_back(x);
        for (int x : a_pts)
            if (c.count(x)) ac.push_back(x);
        if (mc.size() > 1 || ac.size() > 1)
            fail(Err::NotAFunction, "a pencil member meets a section more than once");
        if (!ac.empty()) {
            int prev = pair_of_a.count(ac[0]) ? 1 : 0;
            if (prev) fail(Err::NotAFunction, "point " + name(ac[0]) + " paired twice");
            pair_of_a[ac[0]] = mc.empty() ? -1 : mc[0];
        } else if (!mc.empty()) {
            if (partner_of_pa && *partner_of_pa != mc[0])
                fail(Err::NotBijectiveOutsideTwo, "two sections pair p_a");
            partner_of_pa = mc[0];
        }
    }
    // every a-point must be paired; exactly two marks map to p_m
    std::vector<int> marks;
    std::map<int, int> lambda_inv; // m-point -> a-point
    for (int x : a_pts) {
        if (!pair_of_a.count(x))
            fail(Err::NotBijectiveOutsideTwo, "point " + name(x) + " not covered by the pencil");
        int y = pair_of_a[x];
        if (y < 0) marks.push_back(x);
        else if (lambda_inv.count(y))
            fail(Err::NotBijectiveOutsideTwo, "m-point " + name(y) + " paired twice");
        else lambda_inv[y] = x;
    }
    if (marks.size() != 2)
        fail(Err::NotBijectiveOutsideTwo,
             std::to_string(marks.size()) + " points map to p_m (need exactly 2)");
    if (!partner_of_pa) fail(Err::NotBijectiveOutsideTwo, "no section pairs p_a (lambda(p_a) missing)");
    for (int y : m_pts)
        if (!lambda_inv.count(y) && y != *partner_of_pa)
            fail(Err::NotBijectiveOutsideTwo, "m-point " + name(y) + " unpaired");
    std::sort(marks.begin(), marks.end());

    // group structures on the section carriers
    std::string why;
    auto m_q = induced_quasigroup(cs, m_pts, &why);
    if (!m_q) fail(Err::InvalidConfig, "C_pm carrier: " + why);
    auto a_q = induced_quasigroup(cs, a_pts, &why);
    if (!a_q) fail(Err::InvalidConfig, "C_pa carrier: " + why);

    const int mn = static_cast<int>(m_pts.size()), an = static_cast<int>(a_pts.size());
    auto a_index = [&](int label) {
        return static_cast<int>(std::find(a_pts.begin(), a_pts.end(), label) - a_pts.begin());
    };
    // mu indexed over M ∪ {0_m, oo_m}
    std::vector<int> mu(static_cast<size_t>(mn) + 2, -1);
    for (int i = 0; i < mn; ++i) {
        int y = m_pts[static_cast<size_t>(i)];
        mu[static_cast<size_t>(i)] = y == *partner_of_pa ? an : a_index(lambda_inv[y]);
    }
    mu[static_cast<size_t>(mn)] = a_index(marks[0]);
    mu[static_cast<size_t>(mn) + 1] = a_index(marks[1]);

    auto group_of = [&](const QuasigroupView& q, int unit) {
        const int k = q.size();
        std::vector<std::vector<int>> t(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k)));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = q.compose(unit, q.compose(a, b));
        return FiniteAbelianGroup::from_table(std::move(t));
    };

    // deterministic base-point choices; first pair that reconstructs wins
    std::string last;
    for (int one = 0; one < mn; ++one) {
        if (mu[static_cast<size_t>(one)] == an) continue; // mu(1_m) must land in A
        for (int zero = 0; zero < an; ++zero) {
            FiniteAbelianGroup M = group_of(*m_q, one);
            FiniteAbelianGroup A = group_of(*a_q, zero);
            try {
                MuConfiguration cfg(M, A, mu);
                reconstruct_field(cfg); // validation only
                return cfg;
            } catch (const Error& e) {
                last = e.what();
            }
        }
    }
    fail(Err::AxiomFailure, "no base-point choice reconstructs: " + last);
}

PlaneReport check_projective_plane(const IncidenceStructure& is) {
    PlaneReport rep;
    const int n = is.npoints;
    const int m = static_cast<int>(is.lines.size());
    std::vector<std::vector<char>> on(static_cast<size_t>(m), std::vector<char>(static_cast<size_t>(n), 0));
    for (int l = 0; l < m; ++l)
        for (int p : is.lines[static_cast<size_t>(l)]) {
            if (p < 0 || p >= n) fail(Err::InvalidConfig, "line contains an unknown point");
            on[static_cast<size_t>(l)][static_cast<size_t>(p)] = 1;
        }

    std::vector<std::vector<int>> join(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int a = 0; a < n && rep.unique_join.pass; ++a)
        for (int b = a + 1; b < n && rep.unique_join.pass; ++b) {
            int found = -1;
            for (int l = 0; l < m; ++l) {
                if (!on[static_cast<size_t>(l)][static_cast<size_t>(a)] || !on[static_cast<size_t>(l)][static_cast<size_t>(b)])
                    continue;
                if (found >= 0) {
                    rep.unique_join.pass = false;
                    rep.unique_join.witness = "points " + std::to_string(a) + ", " + std::to_string(b) +
                                              " lie on two lines";
                    break;
                }
                found = l;
            }
            if (found < 0 && rep.unique_join.pass) {
                rep.unique_join.pass = false;
                rep.unique_join.witness = "points " + std::to_string(a) + ", " + std::to_string(b) +
                                          " lie on no common line";
            }
            join[static_cast<size_t>(a)][static_cast<size_t>(b)] = join[static_cast<size_t>(b)][static_cast<size_t>(a)] = found;
        }

    std::vector<std::vector<int>> meet(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m), -1));
    for (int l1 = 0; l1 < m && rep.unique_meet.pass; ++l1)
        for (int l2 = l1 + 1; l2 < m && rep.unique_meet.pass; ++l2) {
            int found = -1;
            for (int p : is.lines[static_cast<size_t>(l1)]) {
                if (!on[static_cast<size_t>(l2)][static_cast<size_t>(p)]) continue;
                if (found >= 0) {
                    rep.unique_meet.pass = false;
                    rep.unique_meet.witness = "lines " + std::to_string(l1) + ", " + std::to_string(l2) +
                                              " meet in two points";
                    break;
                }
                found = p;
            }
            if (found < 0 && rep.unique_meet.pass) {
                rep.unique_meet.pass = false;
                rep.unique_meet.witness = "lines " + std::to_string(l1) + ", " + std::to_string(l2) +
                                          " do not meet";
            }
            meet[static_cast<size_t>(l1)][static_cast<size_t>(l2)] = meet[static_cast<size_t>(l2)][static_cast<size_t>(l1)] = found;
        }

    // nondegeneracy: some quadrilateral (four points, no three collinear)
    for (int a = 0; a < n && !rep.nondegenerate; ++a)
        for (int b = a + 1; b < n && !rep.nondegenerate; ++b)
            for (int c = b + 1; c < n && !rep.nondegenerate; ++c) {
                if (join[static_cast<size_t>(a)][static_cast<size_t>(b)] >= 0 &&
                    join[static_cast<size_t>(a)][static_cast<size_t>(b)] == join[static_cast<size_t>(a)][static_cast<size_t>(c)])
                    continue;
                for (int d = c + 1; d < n && !rep.nondegenerate; ++d) {
                    bool ok = true;
                    std::array<int, 4> q{a, b, c, d};
                    for (int i = 0; i < 4 && ok; ++i)
                        for (int j = i + 1; j < 4 && ok; ++j)
                            for (int k = j + 1; k < 4 && ok; ++k) {
                                int l = join[static_cast<size_t>(q[static_cast<size_t>(i)])][static_cast<size_t>(q[static_cast<size_t>(j)])];
                                ok = !(l >= 0 && on[static_cast<size_t>(l)][static_cast<size_t>(q[static_cast<size_t>(k)])]);
                            }
                    rep.nondegenerate = ok;
                }
            }

    if (!rep.incidence_pass()) return rep; // Pappus needs joins and meets

    // Pappus: unordered triples on each line of a pair, all six matchings
    for (int l1 = 0; l1 < m && rep.pappus.pass; ++l1)
        for (int l2 = l1 + 1; l2 < m && rep.pappus.pass; ++l2) {
            std::vector<int> a1, a2;
            for (int p : is.lines[static_cast<size_t>(l1)])
                if (!on[static_cast<size_t>(l2)][static_cast<size_t>(p)]) a1.push_back(p);
            for (int p : is.lines[static_cast<size_t>(l2)])
                if (!on[static_cast<size_t>(l1)][static_cast<size_t>(p)]) a2.push_back(p);
            if (a1.size() < 3 || a2.size() < 3) continue;
            std::vector<std::array<int, 3>> t1, t2;
            for (size_t i = 0; i < a1.size(); ++i)
                for (size_t j = i + 1; j < a1.size(); ++j)
                    for (size_t k = j + 1; k < a1.size(); ++k) t1.push_back({a1[i], a1[j], a1[k]});
            for (size_t i = 0; i < a2.size(); ++i)
                for (size_t j = i + 1; j < a2.size(); ++j)
                    for (size_t k = j + 1; k < a2.size(); ++k) t2.push_back({a2[i], a2[j], a2[k]});
            static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            for (const auto& A : t1) {
                for (const auto& Braw : t2) {
                    for (const auto& pr : perms) {
                        std::array<int, 3> B{Braw[static_cast<size_t>(pr[0])], Braw[static_cast<size_t>(pr[1])],
                                             Braw[static_cast<size_t>(pr[2])]};
                        // X = AB' ∩ A'B, Y = AC' ∩ A'C, Z = BC' ∩ B'C
                        auto cross = [&](int u, int v2, int u2, int v) {
                            int lu = join[static_cast<size_t>(u)][static_cast<size_t>(v2)];
                            int lv = join[static_cast<size_t>(u2)][static_cast<size_t>(v)];
                            if (lu < 0 || lv < 0 || lu == lv) return -1;
                            return meet[static_cast<size_t>(lu)][static_cast<size_t>(lv)];
                        };
                        int X = cross(A[0], B[1], A[1], B[0]);
                        int Y = cross(A[0], B[2], A[2], B[0]);
                        int Z = cross(A[1], B[2], A[2], B[1]);
                        if (X < 0 || Y < 0 || Z < 0) continue; // degenerate hexagon
                        bool collinear;
                        if (X == Y || Y == Z || X == Z) collinear = true;
                        else {
                            int l = join[static_cast<size_t>(X)][static_cast<size_t>(Y)];
                            collinear = l >= 0 && on[static_cast<size_t>(l)][static_cast<size_t>(Z)];
                        }
                        if (!collinear) {
                            rep.pappus.pass = false;
                            rep.pappus.witness = "hexagon (" + std::to_string(A[0]) + "," + std::to_string(B[0]) +
                                                 "," + std::to_string(A[1]) + "," + std::to_string(B[1]) + "," +
                                                 std::to_string(A[2]) + "," + std::to_string(B[2]) + ")";
                            goto pappus_done;
                        }
                    }
                }
            }
        }
pappus_done:
    return rep;
}

std::vector<std::array<int, 3>> quasigroup_cycles(const QuasigroupView& S) {
    std::set<std::array<int, 3>> out;
    for (int i = 0; i < S.size(); ++i)
        for (int j = i; j < S.size(); ++j) {
            int r = S.compose(i, j);
            if (r < 0) continue;
            std::array<int, 3> t{i, j, r};
            std::sort(t.begin(), t.end());
            out.insert(t);
        }
    return {out.begin(), out.end()};
}

LargeFieldReport check_large_field_curve(const LargeFieldInput& in) {
    LargeFieldReport rep;
    rep.cycles = quasigroup_cycles(in.S);
    const int nc = static_cast<int>(rep.cycles.size());
    const int n = in.S.size();

    IncidenceStructure is{nc, in.pencils};
    rep.plane = check_projective_plane(is);

    auto cycle_contains = [&](int c, int p) {
        const auto& t = rep.cycles[static_cast<size_t>(c)];
        return t[0] == p || t[1] == p || t[2] == p;
    };

    // clause (i): for each p the set of cycles through p is a pencil, and it
    // covers every point of S
    std::vector<int> pencil_of_point(static_cast<size_t>(n), -1);
    for (int p = 0; p < n && rep.clause_i.pass; ++p) {
        std::vector<int> cyc;
        for (int c = 0; c < nc; ++c)
            if (cycle_contains(c, p)) cyc.push_back(c);
        int found = -1;
        for (size_t l = 0; l < in.pencils.size(); ++l) {
            std::vector<int> sorted = in.pencils[l];
            std::sort(sorted.begin(), sorted.end());
            if (sorted == cyc) { found = static_cast<int>(l); break; }
        }
        if (found < 0) {
            rep.clause_i.pass = false;
            rep.clause_i.witness = "cycles through point " + std::to_string(p) + " are not a pencil";
            break;
        }
        pencil_of_point[static_cast<size_t>(p)] = found;
        for (int q = 0; q < n; ++q) {
            bool covered = false;
            for (int c : cyc) covered = covered || cycle_contains(c, q);
            if (!covered) {
                rep.clause_i.pass = false;
                rep.clause_i.witness = "pencil of point " + std::to_string(p) + " is incomplete: misses " +
                                       std::to_string(q);
                break;
            }
        }
    }

    // clause (ii): members of non-point pencils are pairwise disjoint
    for (size_t l = 0; l < in.pencils.size() && rep.clause_ii.pass; ++l) {
        if (std::find(pencil_of_point.begin(), pencil_of_point.end(), static_cast<int>(l)) !=
            pencil_of_point.end())
            continue;
        const auto& pen = in.pencils[l];
        for (size_t i = 0; i < pen.size() && rep.clause_ii.pass; ++i)
            for (size_t j = i + 1; j < pen.size(); ++j) {
                const auto &t1 = rep.cycles[static_cast<size_t>(pen[i])], &t2 = rep.cycles[static_cast<size_t>(pen[j])];
                bool disjoint = true;
                for (int x : t1) disjoint = disjoint && !(x == t2[0] || x == t2[1] || x == t2[2]);
                if (!disjoint) {
                    rep.clause_ii.pass = false;
                    rep.clause_ii.witness = "pencil " + std::to_string(l) + ": cycles " +
                                            std::to_string(pen[i]) + ", " + std::to_string(pen[j]) +
                                            " intersect";
                    break;
                }
            }
    }

    // clause (iii): unique member through p (p != q for the point pencils)
    for (size_t l = 0; l < in.pencils.size() && rep.clause_iii.pass; ++l) {
        int q_of = -1;
        for (int p = 0; p < n; ++p)
            if (pencil_of_point[static_cast<size_t>(p)] == static_cast<int>(l)) q_of = p;
        for (int p = 0; p < n; ++p) {
            if (p == q_of) continue;
            int count = 0;
            for (int c : in.pencils[l])
                if (cycle_contains(c, p)) ++count;
            if (count != 1) {
                rep.clause_iii.pass = false;
                rep.clause_iii.witness = "pencil " + std::to_string(l) + ", point " + std::to_string(p) +
                                         ": " + std::to_string(count) + " cycles";
                break;
            }
        }
    }
    return rep;
}

} // namespace cubic

// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/poly.hpp"

#include <algorithm>

namespace cubic {

UniPoly::UniPoly(std::vector<FieldElem> coeffs, const FieldDesc& f) : f_(f), c_(std::move(coeffs)) {
    for (const auto& x : c_)
        if (!(x.field() == f_)) fail(Err::FieldMismatch, "polynomial coefficients");
    trim();
}

UniPoly UniPoly::constant(const FieldElem& c) { return UniPoly({c}, c.field()); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem::of(0, f_);
    return c_[static_cast<size_t>(i)];
}

FieldElem UniPoly::eval(const FieldElem& x) const {
    FieldElem acc = FieldElem::of(0, f_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    std::vector<FieldElem> d;
    for (size_t i = 1; i < c_.size(); ++i)
        d.push_back(c_[i] * FieldElem::of(static_cast<long>(i), f_));
    return UniPoly(std::move(d), f_);
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    FieldElem inv = c_.back().inverse();
    std::vector<FieldElem> d = c_;
    for (auto& x : d) x *= inv;
    return UniPoly(std::move(d), f_);
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<FieldElem> d(std::max(a.c_.size(), b.c_.size()), FieldElem::of(0, a.f_));
    for (size_t i = 0; i < d.size(); ++i) {
        if (i < a.c_.size()) d[i] += a.c_[i];
        if (i < b.c_.size()) d[i] += b.c_[i];
    }
    return UniPoly(std::move(d), a.f_);
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<FieldElem> d(std::max(a.c_.size(), b.c_.size()), FieldElem::of(0, a.f_));
    for (size_t i = 0; i < d.size(); ++i) {
        if (i < a.c_.size()) d[i] += a.c_[i];
        if (i < b.c_.size()) d[i] -= b.c_[i];
    }
    return UniPoly(std::move(d), a.f_);
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly::zero(a.f_);
    std::vector<FieldElem> d(a.c_.size() + b.c_.size() - 1, FieldElem::of(0, a.f_));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(d), a.f_);
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) fail(Err::DivisionByZero, "polynomial division by zero");
    std::vector<FieldElem> rem = a.c_, quo;
    int db = b.degree();
    FieldElem lead = b.c_.back();
    while (static_cast<int>(rem.size()) - 1 >= db) {
        FieldElem q = rem.back() / lead;
        int shift = static_cast<int>(rem.size()) - 1 - db;
        if (static_cast<int>(quo.size()) < shift + 1) quo.resize(static_cast<size_t>(shift) + 1, FieldElem::of(0, a.f_));
        quo[static_cast<size_t>(shift)] = q;
        for (int i = 0; i <= db; ++i)
            rem[static_cast<size_t>(shift + i)] -= q * b.c_[static_cast<size_t>(i)];
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        if (rem.empty()) break;
    }
    return {UniPoly(std::move(quo), a.f_), UniPoly(std::move(rem), a.f_)};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

// All positive divisors of |n|; trial division with a pseudo-prime tail for
// desk-scale coefficients.
std::vector<mpz_class> divisors_of(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<std::pair<mpz_class, int>> fac;
    mpz_class d = 2;
    while (d * d <= n && d < 1000000) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) n /= d, ++e;
            fac.push_back({d, e});
        }
        d += (d == 2 ? 1 : 2);
    }
    if (n > 1) fac.push_back({n, 1});
    std::vector<mpz_class> out{1};
    for (auto& [p, e] : fac) {
        size_t sz = out.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<FieldElem, int>> UniPoly::roots_in_field() const {
    std::vector<std::pair<FieldElem, int>> out;
    if (is_zero()) fail(Err::Internal, "roots of the zero polynomial");
    auto count_mult = [&](const FieldElem& r) {
        UniPoly p = *this;
        UniPoly lin({-r, FieldElem::of(1, f_)}, f_);
        int m = 0;
        while (true) {
            auto [q, rem] = divmod(p, lin);
            if (!rem.is_zero()) break;
            ++m;
            p = q;
            if (p.is_zero()) break;
        }
        return m;
    };
    if (f_.finite()) {
        for (std::uint32_t x = 0; x < f_.p; ++x) {
            FieldElem r = FieldElem::modp(x, f_);
            if (eval(r).is_zero()) out.push_back({r, count_mult(r)});
        }
        return out;
    }
    // Rational roots: clear denominators, p/q with p | a_0, q | a_lead.
    mpz_class l(1);
    for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rat().get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& x : c_) ic.push_back(x.rat().get_num() * (l / x.rat().get_den()));
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) out.push_back({FieldElem::rational(0), static_cast<int>(low)});
    if (low >= ic.size()) return out;
    for (const auto& pn : divisors_of(ic[low]))
        for (const auto& qd : divisors_of(ic.back())) {
            for (int s : {1, -1}) {
                FieldElem r = FieldElem::rational(mpq_class(s * pn, qd));
                bool dup = false;
                for (auto& [rr, m] : out)
                    if (rr == r) { dup = true; break; }
                if (!dup && eval(r).is_zero()) out.push_back({r, count_mult(r)});
            }
        }
    return out;
}

BinaryForm::BinaryForm(std::vector<FieldElem> c, const FieldDesc& f) : f_(f), c_(std::move(c)) {
    if (c_.empty()) fail(Err::Internal, "binary form needs a degree");
}

bool BinaryForm::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

FieldElem BinaryForm::eval(const FieldElem& u, const FieldElem& v) const {
    FieldElem acc = FieldElem::of(0, f_);
    int d = degree();
    for (int i = 0; i <= d; ++i) acc += c_[static_cast<size_t>(i)] * u.pow(i) * v.pow(d - i);
    return acc;
}

std::vector<std::pair<std::pair<FieldElem, FieldElem>, int>> BinaryForm::roots() const {
    if (is_zero()) fail(Err::Internal, "roots of the zero form");
    std::vector<std::pair<std::pair<FieldElem, FieldElem>, int>> out;
    UniPoly p(c_, f_); // g(t,1)
    int inf_mult = degree() - p.degree();
    if (inf_mult > 0) out.push_back({{FieldElem::of(1, f_), FieldElem::of(0, f_)}, inf_mult});
    for (auto& [r, m] : p.roots_in_field()) out.push_back({{r, FieldElem::of(1, f_)}, m});
    return out;
}

BinaryForm BinaryForm::deflate(const FieldElem& u0, const FieldElem& v0) const {
    // Divide by the linear form (v0*u - u0*v), which vanishes at (u0:v0).
    int d = degree();
    std::vector<FieldElem> q(static_cast<size_t>(d), FieldElem::of(0, f_));
    if (v0.is_zero()) {
        // dividing by a multiple of v: needs c_d == 0
        if (!c_[static_cast<size_t>(d)].is_zero()) fail(Err::Internal, "deflate: (1:0) not a root");
        FieldElem s = -u0;
        for (int i = 0; i < d; ++i) q[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] / s;
        return BinaryForm(std::move(q), f_);
    }
    FieldElem carry = FieldElem::of(0, f_);
    for (int i = d; i >= 1; --i) {
        FieldElem qi = (c_[static_cast<size_t>(i)] + carry * u0) / v0;
        q[static_cast<size_t>(i - 1)] = qi;
        carry = qi;
    }
    // remainder must vanish: q * (v0 u - u0 v) == this
    std::vector<FieldElem> chk(static_cast<size_t>(d + 1), FieldElem::of(0, f_));
    for (int i = 0; i < d; ++i) {
        chk[static_cast<size_t>(i + 1)] += q[static_cast<size_t>(i)] * v0;
        chk[static_cast<size_t>(i)] -= q[static_cast<size_t>(i)] * u0;
    }
    for (int i = 0; i <= d; ++i)
        if (!(chk[static_cast<size_t>(i)] == c_[static_cast<size_t>(i)]))
            fail(Err::Internal, "deflate: not a root");
    return BinaryForm(std::move(q), f_);
}

BinaryForm BinaryForm::gcd(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero() || b.is_zero()) fail(Err::Internal, "gcd with zero form");
    UniPoly pa(a.c_, a.f_), pb(b.c_, b.f_);
    int va = a.degree() - pa.degree(); // multiplicity of v in... of root (1:0)
    int vb = b.degree() - pb.degree();
    UniPoly g = UniPoly::gcd(pa, pb);
    int extra = std::min(va, vb); // shared power of the root at infinity
    std::vector<FieldElem> c(static_cast<size_t>(g.degree() + 1 + extra), FieldElem::of(0, a.f_));
    for (int i = 0; i <= g.degree(); ++i) c[static_cast<size_t>(i)] = g.coeff(i);
    return BinaryForm(std::move(c), a.f_);
}

} // namespace cubic

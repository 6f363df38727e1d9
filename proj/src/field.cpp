// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "cubic/field.hpp"

namespace cubic {

const char* err_name(Err e) {
    switch (e) {
    case Err::ZeroVector: return "ZeroVector";
    case Err::CoincidentPoints: return "CoincidentPoints";
    case Err::CollinearInput: return "CollinearInput";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::NotPrime: return "NotPrime";
    case Err::ParseError: return "ParseError";
    case Err::SingularPoint: return "SingularPoint";
    case Err::NotOnSurface: return "NotOnSurface";
    case Err::NotOnCurve: return "NotOnCurve";
    case Err::SingularInput: return "SingularInput";
    case Err::DegenerateBasis: return "DegenerateBasis";
    case Err::ZeroRestriction: return "ZeroRestriction";
    case Err::UnsupportedField: return "UnsupportedField";
    case Err::NotDiagonal: return "NotDiagonal";
    case Err::Unsupported: return "Unsupported";
    case Err::PartialLaw: return "PartialLaw";
    case Err::NotAbelian: return "NotAbelian";
    case Err::CardinalityMismatch: return "CardinalityMismatch";
    case Err::NotWellDefined: return "NotWellDefined";
    case Err::NotBijective: return "NotBijective";
    case Err::AxiomFailure: return "AxiomFailure";
    case Err::WrongType: return "WrongType";
    case Err::ConstraintCViolated: return "ConstraintCViolated";
    case Err::IrrationalIntersection: return "IrrationalIntersection";
    case Err::CycleMismatch: return "CycleMismatch";
    case Err::DisconnectedGraph: return "DisconnectedGraph";
    case Err::IncompatibleScalars: return "IncompatibleScalars";
    case Err::NotAFunction: return "NotAFunction";
    case Err::NotBijectiveOutsideTwo: return "NotBijectiveOutsideTwo";
    case Err::IntersectionNotThreePoints: return "IntersectionNotThreePoints";
    case Err::SingularSurface: return "SingularSurface";
    case Err::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case Err::BudgetExhausted: return "BudgetExhausted";
    case Err::InsufficientData: return "InsufficientData";
    case Err::InvalidConfig: return "InvalidConfig";
    case Err::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldDesc FieldDesc::Fp(std::uint32_t p) {
    if (p >= (1u << 31)) fail(Err::Unsupported, "prime fields limited to p < 2^31");
    if (!is_prime_u32(p)) fail(Err::NotPrime, std::to_string(p) + " is not prime");
    return {p};
}

void FieldElem::check_same(const FieldDesc& a, const FieldDesc& b) {
    if (!(a == b)) fail(Err::FieldMismatch, a.str() + " vs " + b.str());
}

FieldElem FieldElem::rational(const mpq_class& v) {
    FieldElem e;
    e.q_ = v;
    e.q_.canonicalize();
    return e;
}

FieldElem FieldElem::rational(long num, long den) {
    if (den == 0) fail(Err::DivisionByZero, "rational with zero denominator");
    // Build from an mpz pair (the (long,long) mpq constructor treats the
    // denominator as unsigned) and canonicalize before any mpq_set: GMP
    // requires canonical form, a negative denominator is undefined behavior.
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return rational(q);
}

FieldElem FieldElem::integer(const mpz_class& v) { return rational(mpq_class(v)); }

FieldElem FieldElem::modp(std::int64_t v, const FieldDesc& f) {
    if (!f.finite()) fail(Err::FieldMismatch, "modp element needs a finite field");
    FieldElem e(f);
    std::int64_t p = f.p;
    e.r_ = static_cast<std::uint64_t>(((v % p) + p) % p);
    return e;
}

FieldElem FieldElem::of(long n, const FieldDesc& f) {
    return f.rational() ? rational(n) : modp(n, f);
}

bool FieldElem::is_one() const { return f_.rational() ? q_ == 1 : r_ == 1; }

const mpq_class& FieldElem::rat() const {
    if (!f_.rational()) fail(Err::FieldMismatch, "rat() on finite-field element");
    return q_;
}

std::uint64_t FieldElem::residue() const {
    if (!f_.finite()) fail(Err::FieldMismatch, "residue() on rational element");
    return r_;
}

FieldElem FieldElem::operator-() const {
    FieldElem e(f_);
    if (f_.rational()) e.q_ = -q_;
    else e.r_ = r_ == 0 ? 0 : f_.p - r_;
    return e;
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    FieldElem::check_same(a.f_, b.f_);
    FieldElem e(a.f_);
    if (a.f_.rational()) e.q_ = a.q_ + b.q_;
    else {
        std::uint64_t s = a.r_ + b.r_;
        e.r_ = s >= a.f_.p ? s - a.f_.p : s;
    }
    return e;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    FieldElem::check_same(a.f_, b.f_);
    FieldElem e(a.f_);
    if (a.f_.rational()) e.q_ = a.q_ * b.q_;
    else e.r_ = (a.r_ * b.r_) % a.f_.p; // p < 2^31, so the product fits
    return e;
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

FieldElem FieldElem::inverse() const {
    if (is_zero()) fail(Err::DivisionByZero, "inverse of zero");
    FieldElem e(f_);
    if (f_.rational()) e.q_ = 1 / q_;
    else e.r_ = mod_inv(r_, f_.p);
    return e;
}

FieldElem FieldElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem acc = of(1, f_), base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
    check_same(f_, o.f_);
    return f_.rational() ? q_ == o.q_ : r_ == o.r_;
}

std::strong_ordering FieldElem::operator<=>(const FieldElem& o) const {
    check_same(f_, o.f_);
    if (f_.finite()) return r_ <=> o.r_;
    int c = cmp(q_, o.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool FieldElem::is_square() const {
    if (is_zero()) return true;
    if (f_.rational()) {
        if (q_ < 0) return false;
        return mpz_perfect_square_p(q_.get_num().get_mpz_t()) &&
               mpz_perfect_square_p(q_.get_den().get_mpz_t());
    }
    if (f_.p == 2) return true;
    return mod_pow(r_, (f_.p - 1) / 2, f_.p) == 1;
}

std::optional<FieldElem> FieldElem::sqrt() const {
    if (is_zero()) return of(0, f_);
    if (f_.rational()) {
        if (!is_square()) return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), q_.get_num().get_mpz_t());
        mpz_sqrt(d.get_mpz_t(), q_.get_den().get_mpz_t());
        return rational(mpq_class(n, d));
    }
    auto r = mod_sqrt(r_, f_.p);
    if (!r) return std::nullopt;
    return modp(static_cast<std::int64_t>(*r), f_);
}

std::optional<FieldElem> FieldElem::cbrt() const {
    if (is_zero()) return of(0, f_);
    if (f_.rational()) {
        mpz_class n = q_.get_num(), d = q_.get_den(), rn, rd;
        bool neg = n < 0;
        if (neg) n = -n;
        if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3)) return std::nullopt;
        if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3)) return std::nullopt;
        if (neg) rn = -rn;
        return rational(mpq_class(rn, rd));
    }
    // x^3 is a bijection when p ≡ 2 (mod 3); otherwise scan the (unique up to
    // cube roots of unity) preimage.  p is small whenever this path is used.
    std::uint64_t p = f_.p;
    if (p % 3 == 2) {
        // inverse of cubing: exponent 3^{-1} mod (p-1)
        std::uint64_t e = mod_inv(3 % (p - 1), p - 1);
        return modp(static_cast<std::int64_t>(mod_pow(r_, e, p)), f_);
    }
    for (std::uint64_t x = 1; x < p; ++x)
        if (x * x % p * x % p == r_) return modp(static_cast<std::int64_t>(x), f_);
    return std::nullopt;
}

std::string FieldElem::str() const {
    if (f_.rational()) return q_.get_str();
    return std::to_string(r_);
}

FieldElem FieldElem::parse(const std::string& s, const FieldDesc& f) {
    if (s.empty()) fail(Err::ParseError, "empty field element");
    try {
        mpq_class q(s);
        q.canonicalize();
        if (f.rational()) return rational(q);
        // residue: numerator * denominator^{-1} mod p
        mpz_class num = q.get_num(), den = q.get_den(), pz(static_cast<unsigned long>(f.p));
        mpz_class nm = num % pz, dm = den % pz;
        if (nm < 0) nm += pz;
        std::uint64_t n = nm.get_ui(), d = dm.get_ui();
        if (d == 0) fail(Err::DivisionByZero, "denominator divisible by p");
        return modp(static_cast<std::int64_t>(n * mod_inv(d, f.p) % f.p), f);
    } catch (const std::invalid_argument&) {
        fail(Err::ParseError, "bad field element '" + s + "'");
    }
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) acc = acc * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return acc;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) fail(Err::DivisionByZero, "non-invertible residue");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

std::optional<std::uint64_t> mod_sqrt(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
    // Tonelli–Shanks
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) q >>= 1, ++s;
    std::uint64_t z = 2;
    while (mod_pow(z, (p - 1) / 2, p) == 1) ++z;
    std::uint64_t m = s, c = mod_pow(z, q, p), t = mod_pow(a, q, p), r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) tt = tt * tt % p, ++i;
        std::uint64_t b = mod_pow(c, 1ull << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

} // namespace cubic

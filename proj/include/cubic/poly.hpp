// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <utility>
#include <vector>

#include "cubic/field.hpp"

namespace cubic {

/// Dense univariate polynomial over one exact field; coeffs[i] is the
/// coefficient of t^i, trailing zeros trimmed.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(std::vector<FieldElem> coeffs, const FieldDesc& f);

    static UniPoly zero(const FieldDesc& f) { return UniPoly({}, f); }
    static UniPoly constant(const FieldElem& c);

    const FieldDesc& field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    FieldElem coeff(int i) const; // zero outside the stored range
    const std::vector<FieldElem>& coeffs() const { return c_; }

    FieldElem eval(const FieldElem& x) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

    static UniPoly gcd(UniPoly a, UniPoly b); // monic

    /// Roots in the ground field with multiplicities.  Exhaustive over F_p;
    /// rational-root search over Q (complete for rational roots).
    std::vector<std::pair<FieldElem, int>> roots_in_field() const;

private:
    void trim();
    FieldDesc f_;
    std::vector<FieldElem> c_;
};

/// Homogeneous binary form g(u,v) of fixed degree; c[i] multiplies u^i v^{d-i}.
class BinaryForm {
public:
    BinaryForm(std::vector<FieldElem> c, const FieldDesc& f);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const;
    const FieldDesc& field() const { return f_; }
    const FieldElem& coeff_u(int i) const { return c_[static_cast<size_t>(i)]; }

    FieldElem eval(const FieldElem& u, const FieldElem& v) const;

    /// Projective roots (u:v) in P^1(K) with multiplicities.  The full
    /// factorization over K splits off a (possibly trivial) K-irreducible part.
    std::vector<std::pair<std::pair<FieldElem, FieldElem>, int>> roots() const;

    /// Divide out a known root (u0:v0) once; root must actually divide.
    BinaryForm deflate(const FieldElem& u0, const FieldElem& v0) const;

    static BinaryForm gcd(const BinaryForm& a, const BinaryForm& b);

private:
    FieldDesc f_;
    std::vector<FieldElem> c_;
};

} // namespace cubic

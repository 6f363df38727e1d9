// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "cubic/errors.hpp"

namespace cubic {

/// Ground-field descriptor that travels with every element: characteristic 0
/// (arbitrary-precision rationals) or a prime field F_p with p < 2^31.
/// Mixed-field arithmetic is a hard error, never a coercion.
struct FieldDesc {
    std::uint32_t p = 0; // 0 = Q

    bool rational() const { return p == 0; }
    bool finite() const { return p != 0; }
    std::uint32_t characteristic() const { return p; }
    bool operator==(const FieldDesc&) const = default;
    std::string str() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }

    static FieldDesc Q() { return {0}; }
    static FieldDesc Fp(std::uint32_t p); // checks primality and the 2^31 bound
};

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator (GMP canonical form); residues live in [0, p).
class FieldElem {
public:
    FieldElem() : q_(0) {} // rational zero
    explicit FieldElem(const FieldDesc& f) : f_(f), q_(0), r_(0) {}

    static FieldElem rational(const mpq_class& v);
    static FieldElem rational(long num, long den = 1);
    static FieldElem integer(const mpz_class& v);
    static FieldElem modp(std::int64_t v, const FieldDesc& f);
    /// Integer constant in the given field (n mod p, or n/1).
    static FieldElem of(long n, const FieldDesc& f);

    const FieldDesc& field() const { return f_; }
    bool is_zero() const { return f_.rational() ? q_ == 0 : r_ == 0; }
    bool is_one() const;

    const mpq_class& rat() const; // throws unless rational
    std::uint64_t residue() const; // throws unless finite

    FieldElem operator-() const;
    FieldElem inverse() const; // DivisionByZero on 0
    FieldElem pow(long e) const;

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    /// Total order inside one field (residue order resp. rational order);
    /// used only to make canonical choices deterministic.
    std::strong_ordering operator<=>(const FieldElem& o) const;

    bool is_square() const;
    /// Exact square root when is_square(); nullopt otherwise.
    std::optional<FieldElem> sqrt() const;
    /// Exact cube root in the field, if one exists.
    std::optional<FieldElem> cbrt() const;

    std::string str() const;
    static FieldElem parse(const std::string& s, const FieldDesc& f);

private:
    static void check_same(const FieldDesc& a, const FieldDesc& b);

    FieldDesc f_;
    mpq_class q_;         // valid iff f_.rational()
    std::uint64_t r_ = 0; // valid iff f_.finite()
};

// Modular helpers shared with the harness fast paths.
std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);
std::optional<std::uint64_t> mod_sqrt(std::uint64_t a, std::uint64_t p);
bool is_prime_u32(std::uint32_t n);

} // namespace cubic

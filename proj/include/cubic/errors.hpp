// Copyright (c) 2026 the cubic authors.
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <stdexcept>
#include <string>

namespace cubic {

enum class Err {
    ZeroVector,
    CoincidentPoints,
    CollinearInput,
    DimensionMismatch,
    FieldMismatch,
    DivisionByZero,
    NotPrime,
    ParseError,
    SingularPoint,
    NotOnSurface,
    NotOnCurve,
    SingularInput,
    DegenerateBasis,
    ZeroRestriction,
    UnsupportedField,
    NotDiagonal,
    Unsupported,
    PartialLaw,
    NotAbelian,
    CardinalityMismatch,
    NotWellDefined,
    NotBijective,
    AxiomFailure,
    WrongType,
    ConstraintCViolated,
    IrrationalIntersection,
    CycleMismatch,
    DisconnectedGraph,
    IncompatibleScalars,
    NotAFunction,
    NotBijectiveOutsideTwo,
    IntersectionNotThreePoints,
    SingularSurface,
    MemoryBudgetExceeded,
    BudgetExhausted,
    InsufficientData,
    InvalidConfig,
    Internal,
};

const char* err_name(Err e);

/// Library-wide exception; `kind` identifies the contract clause that failed.
class Error : public std::runtime_error {
public:
    Error(Err kind, const std::string& what)
        : std::runtime_error(std::string(err_name(kind)) + ": " + what), kind_(kind) {}
    Err kind() const { return kind_; }

private:
    Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& what) { throw Error(kind, what); }

} // namespace cubic

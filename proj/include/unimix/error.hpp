#pragma once

#include <stdexcept>
#include <string>

namespace unimix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally invalid input: bad shapes, indices, probabilities or words.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The stationary linear system has no unique solution (reducible or
/// numerically degenerate chain).
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// A computed distribution has an entry that is not strictly positive.
class NonPositiveResult : public Error {
public:
    using Error::Error;
};

/// Cesaro iteration hit its iteration cap.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The weight vector of the combination formula cancelled to (numerical) zero.
class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

/// Every restricted permutation set was empty, the numerator is identically zero.
class EmptyNumerator : public DegenerateDenominator {
public:
    using DegenerateDenominator::DegenerateDenominator;
};

/// Permutation enumeration requested beyond the supported size.
class EnumerationLimit : public Error {
public:
    using Error::Error;
};

}  // namespace unimix

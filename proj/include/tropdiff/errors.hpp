#ifndef TROPDIFF_ERRORS_HPP
#define TROPDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tropdiff {

// Base for everything thrown by the library on contract violations.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands live in incompatible spaces (rank, variable count, grid, weight).
struct MismatchError : Error {
    using Error::Error;
};

// A minimum / leading term was requested from a series or support that is
// empty but only known modulo its truncation bound.
struct IndeterminateBelowBound : Error {
    using Error::Error;
};

// A residual's propagated bound is too low to certify anything.
struct InsufficientPrecision : Error {
    using Error::Error;
};

// A transformed exponent left the target integer grid (negative or fractional).
struct OffGridResult : Error {
    using Error::Error;
};

// The exponent matrix of a monomial substitution is not invertible.
struct SingularMatrixError : Error {
    using Error::Error;
};

// Anything rejected by the text frontend, with a 1-based source position.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& what, int line_, int col_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + what),
          line(line_), column(col_) {}
};

} // namespace tropdiff

#endif

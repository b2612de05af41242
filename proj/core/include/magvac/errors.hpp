#pragma once

#include <stdexcept>

namespace magvac {

// Base of every library exception; catch this to map failures to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Regulator masses coincide or violate the strict ordering m0 < m1 < m2.
struct DegenerateMasses : Error {
  using Error::Error;
};

// Argument outside an operation's documented domain.
struct DomainError : Error {
  using Error::Error;
};

// An integrand returned NaN or an infinity; signals an unhandled singularity
// upstream rather than a quadrature failure.
struct NonFiniteEvaluation : Error {
  using Error::Error;
};

// A termwise-truncated series hit n_max before meeting term_tol.
struct SeriesTruncation : Error {
  using Error::Error;
};

// Field-file ingestion failures.
struct ParseError : Error {
  using Error::Error;
};
struct NonUniformGrid : Error {
  using Error::Error;
};
struct IncompleteGrid : Error {
  using Error::Error;
};

// File could not be opened or written.
struct IoError : Error {
  using Error::Error;
};

// Grid smaller than the stencil an operation needs.
struct GridTooSmall : Error {
  using Error::Error;
};

// Rescaling would leave fewer than 3 cells along some axis.
struct ResampleError : Error {
  using Error::Error;
};

}  // namespace magvac

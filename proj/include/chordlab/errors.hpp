#pragma once

#include <stdexcept>
#include <string>

namespace chordlab {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or serialization.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A series hit its term cap before meeting the tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature could not reach abs_tol within max_depth.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Density evaluated at a point where it is unbounded.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class ParallelLinesError : public Error {
 public:
  using Error::Error;
};

class CoincidentLinesError : public ParallelLinesError {
 public:
  using ParallelLinesError::ParallelLinesError;
};

// Chord requested through two coincident endpoints.
class DegenerateChordError : public Error {
 public:
  using Error::Error;
};

// Snap-based deduplication could not separate nearby clusters.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

}  // namespace chordlab

#pragma once

#include <stdexcept>
#include <string>

namespace mmp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: non-Hermitian data, a matrix expected PSD that is not, dimension mismatch.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InsufficientMomentsError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

// A user-supplied parameter (K, T, z, grid) outside its admissible set.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class UnsolvableError : public Error {
 public:
  using Error::Error;
};

// The shift operator is not well defined on the span of the first dN vectors.
class IllDefinedOperatorError : public Error {
 public:
  using Error::Error;
};

class SingularResolventError : public Error {
 public:
  using Error::Error;
};

// A numerical invariant that should hold by construction failed.
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmp

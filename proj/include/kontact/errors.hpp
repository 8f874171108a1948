#pragma once

#include <stdexcept>
#include <string>

namespace kontact {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tangent vectors or frames attached to different base points.
class BaseMismatchError : public Error {
 public:
  using Error::Error;
};

/// Rank-deficient seeds, invalid generator matrices, off-sphere points.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation too close to the critical set of a function or the singular
/// set of a unit field.
class RegularityError : public Error {
 public:
  using Error::Error;
};

class SamplingExhaustedError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// A_N failed the symmetry test on N^perp (complement not integrable).
class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

/// Bad manifold names, malformed overrides; maps to CLI exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace kontact

#pragma once

#include <stdexcept>
#include <string>

namespace belcal {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text could not be parsed at all (malformed file, bad number, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally parsable input that violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested pair is not ordered in the given direction.
class NotComparable : public Error {
 public:
  using Error::Error;
};

/// Dense or exhaustive computation requested beyond the configured size cap.
class FrameTooLarge : public Error {
 public:
  using Error::Error;
};

/// Closure requested for an empty generating set.
class EmptyGenerators : public Error {
 public:
  using Error::Error;
};

/// The element is not a member of the focal-point set at hand.
class NotInSet : public Error {
 public:
  using Error::Error;
};

/// A transform input lacks an image on some focal point.
class IncompleteInput : public Error {
 public:
  using Error::Error;
};

/// Multiplicative inversion hit a zero image.
class ZeroImage : public Error {
 public:
  using Error::Error;
};

/// A commonality image needed for weight computation is zero.
class ZeroCommonality : public Error {
 public:
  using Error::Error;
};

/// Recovered values do not form a valid mass function.
class NotAMass : public Error {
 public:
  using Error::Error;
};

/// Parts do not tile the powerset as interval unions.
class InvalidPartition : public Error {
 public:
  using Error::Error;
};

/// Combined sources are fully conflicting (K = 0).
class TotalConflict : public Error {
 public:
  using Error::Error;
};

/// Decomposition requires the union of the support to carry mass.
class MaximumMissing : public Error {
 public:
  using Error::Error;
};

/// Discount target does not cover the support.
class InvalidTarget : public Error {
 public:
  using Error::Error;
};

/// Weight ablation requested outside the focal points of the decomposition.
class NotAFocalPoint : public Error {
 public:
  using Error::Error;
};

/// A weight involved in ablation is zero.
class ZeroWeight : public Error {
 public:
  using Error::Error;
};

}  // namespace belcal

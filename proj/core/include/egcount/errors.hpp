#pragma once

#include <stdexcept>

namespace egcount {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A directed relation that was required to be acyclic contains a cycle.
class CycleDetected : public Error {
 public:
  using Error::Error;
};

/// Brute-force routine called above its node cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An EDAG count was requested for a node count the provider has no value for.
class NotCovered : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold exactly did not; always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// A sample has no EDAG or no connected record, so the ratio estimates are undefined.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (EDAG table, JSONL sample, canonical key).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace egcount

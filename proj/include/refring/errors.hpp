#pragma once

#include <stdexcept>
#include <string>

namespace refring {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in rings (or monoid presentations) that differ.
class DescriptorMismatch : public Error {
 public:
  using Error::Error;
};

/// The operation has no algorithm for this ring.
class UnsupportedDescriptor : public Error {
 public:
  using Error::Error;
};

/// An exhaustive operation was asked to enumerate an infinite ring.
class InfiniteRing : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed its budget. Never a negative answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied precondition or claim does not hold.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// Malformed descriptor, element, matrix or presentation text.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace refring

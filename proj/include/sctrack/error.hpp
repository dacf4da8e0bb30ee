#pragma once

#include <stdexcept>
#include <string>

namespace sctrack {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument (empty frame, empty selection, mismatched sizes).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configuration whose constraints cannot be satisfied.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// A rectangle or sample box that falls outside the image.
class OutOfBounds : public Error {
 public:
  using Error::Error;
};

/// Detection had no candidate positions to score.
class TrackingLost : public Error {
 public:
  using Error::Error;
};

/// File system or decode failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sctrack

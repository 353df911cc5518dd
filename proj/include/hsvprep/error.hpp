#pragma once

#include <stdexcept>

namespace hsvprep {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// File was readable but is not an image we accept.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's contract (bad configuration, out-of-bounds position, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ImputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsvprep

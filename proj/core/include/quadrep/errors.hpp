#pragma once

#include <stdexcept>
#include <string>

namespace quadrep {

// Bad parameters or malformed input files. Maps to CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A query landed outside what a table can decide. Never answered by guessing.
class CoverageError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Memory budget exceeded or allocation failure. Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quadrep

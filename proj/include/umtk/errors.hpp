#pragma once

#include <stdexcept>
#include <string>

namespace umtk {

// Base class for everything thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input data (files, matrices, function
// specs). Messages name the offending entry: indices, line, or field.
class input_error : public error {
 public:
  using error::error;
};

// An operation was called outside its stated contract, e.g. asking for a
// non-increasing witness of an increasing function.
class precondition_error : public error {
 public:
  using error::error;
};

// An internal consistency check failed. Always a bug.
class internal_error : public error {
 public:
  using error::error;
};

// A certified numeric procedure hit its precision cap without reaching a
// decision. Callers can retry with a wider PrecisionPolicy.
class undecided_error : public error {
 public:
  using error::error;
};

}  // namespace umtk

#pragma once

#include <stdexcept>

namespace elab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct NotUnitTrace : Error { using Error::Error; };
struct SingularMarginal : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct InternalSamplingFailure : Error { using Error::Error; };

}  // namespace elab

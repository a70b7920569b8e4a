#pragma once

#include <stdexcept>
#include <string>

namespace forestbd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DIMACS input or malformed command-line values.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated by the caller
/// (variable outside the universe, cyclic input to the acyclic engine, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An exponential routine refused to run because its input exceeds the
/// documented size limit.
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace forestbd

#pragma once

#include <stdexcept>
#include <string>

namespace tfim {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid instance document. `path()` names the offending field,
/// e.g. "edges[3].w".
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A request exceeds a configured size limit (e.g. the dense diagonalization cap).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Precondition violated by a caller-supplied argument.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A numerical check failed (verification reports, Gram factorization refusal).
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfim

#ifndef SCIGIS_ERROR_HPP
#define SCIGIS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scigis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input data. Carries the source name and the
/// 1-based line number when one applies (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Invalid run configuration: missing resources, unknown names, bad params.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numeric computation that has no defined result for its input.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace scigis

#endif  // SCIGIS_ERROR_HPP

#include "scigis/error.hpp"

#include <fmt/format.h>

namespace scigis {

namespace {

std::string describe(const std::string& source, std::size_t line, const std::string& what) {
  if (line == 0) return fmt::format("{}: {}", source, what);
  return fmt::format("{}:{}: {}", source, line, what);
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : Error(describe(source, line, what)), source_(std::move(source)), line_(line) {}

}  // namespace scigis

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nanopub {

/// Domain error carrying a stable kebab-case code (e.g. "not-found").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// TriG syntax error. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string code, const std::string& message, std::size_t line,
             std::size_t column)
      : Error(std::move(code), "line " + std::to_string(line) + ", column " +
                                   std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nanopub

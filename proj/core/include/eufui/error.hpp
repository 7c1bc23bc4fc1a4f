#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eufui {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or semantic error in a problem file, located by 1-based line and
/// column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

enum class LimitKind { Branches, Clauses, ConditionalDags, Cubes, Time };

const char* to_string(LimitKind kind);

/// A configured resource cap was hit. `partial` carries whatever statistics
/// the aborted computation had gathered, as `key=value` pairs.
class LimitExceeded : public Error {
 public:
  LimitExceeded(LimitKind kind, const std::string& detail, std::string partial = {})
      : Error(std::string(to_string(kind)) + " limit exceeded: " + detail),
        kind_(kind),
        partial_(std::move(partial)) {}

  LimitKind kind() const { return kind_; }
  const std::string& partial() const { return partial_; }

 private:
  LimitKind kind_;
  std::string partial_;
};

}  // namespace eufui

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace milnorkit {

enum class ErrorKind {
  usage,         // bad command line or configuration
  parse,         // malformed expression or file
  precondition,  // an operation was called outside its domain
};

/// Base exception for every failure raised by the library. The kind decides
/// the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::precondition, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorKind::parse, what), message_(what) {}
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::parse, what + " at column " + std::to_string(position + 1)),
        message_(what),
        position_(position) {}

  /// Zero-based character offset into the parsed text, when there is one.
  std::optional<std::size_t> position() const noexcept { return position_; }
  /// The message without the position.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::optional<std::size_t> position_;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw PreconditionError(what);
}

}  // namespace milnorkit

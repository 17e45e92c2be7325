#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace morphotag {

// Error categories map 1:1 onto CLI exit codes (see exit_code()).
enum class ErrorKind {
  format,     // malformed input file
  data,       // well-formed input with inconsistent content
  config,     // invalid options or settings
  argument,   // precondition violated by a caller
  schema,     // tag not describable by the tag schema
  internal,   // broken invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class FormatError : public Error {
 public:
  // line is 1-based; 0 means "no particular line".
  FormatError(const std::string& what, std::size_t line = 0, std::string source = {})
      : Error(ErrorKind::format, decorate(what, line, source)),
        message_(what),
        line_(line),
        source_(std::move(source)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

  // Re-throws with a file name attached, keeping the line number.
  FormatError with_source(const std::string& source) const;

 private:
  static std::string decorate(const std::string& what, std::size_t line, const std::string& source);

  std::string message_;
  std::size_t line_;
  std::string source_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorKind::argument, what) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ErrorKind::schema, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

// 2 input-format error, 3 configuration error, 4 internal invariant violation.
int exit_code(ErrorKind kind) noexcept;

}  // namespace morphotag

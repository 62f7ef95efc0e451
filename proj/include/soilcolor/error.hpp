#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace soilcolor {

// Base of every exception the library throws. The CLI maps these to exit
// code 1; usage problems never reach the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input lies outside the mathematical domain of an operation
// (negative tristimulus, illuminant mismatch, empty candidate set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied parameter is invalid (non-positive weight, bad sigma).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The requested illuminant/encoding combination is not supported.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed Munsell notation or method name. Carries the offending token.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::string token)
      : Error(std::move(message)), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

// A data file (chip scan, manifest, renotation table) failed validation.
// `row` is the 1-based physical line number, 0 when not row-specific.
class LoadError : public Error {
 public:
  LoadError(const std::string& message, std::size_t row = 0)
      : Error(row == 0 ? message : "row " + std::to_string(row) + ": " + message), row_(row) {}

  std::size_t row() const noexcept { return row_; }

  // Same error with the offending file named in front.
  LoadError in_file(const std::string& path) const { return LoadError(path + ": " + what(), row_, nullptr); }

 private:
  LoadError(const std::string& full, std::size_t row, std::nullptr_t) : Error(full), row_(row) {}

  std::size_t row_;
};

// The chip database could not be assembled (missing chips on a page).
class BuildError : public Error {
 public:
  using Error::Error;
};

// Evaluation inputs are inconsistent with the database.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace soilcolor

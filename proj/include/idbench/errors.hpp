#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idbench {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line()` is 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input whose values violate a domain constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A statistic (agreement, correlation, similarity) is undefined for the input.
class UndefinedError : public Error {
 public:
  using Error::Error;
};

// Too few comparable observations for a statistic.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class MissingDataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class OovError : public Error {
 public:
  explicit OovError(const std::string& token)
      : Error("out of vocabulary: " + token), token_(token) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

// Survey answers submitted twice.
class ConflictError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace idbench

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wisard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EncodingError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// Input length (retina bits or feature dimension) differs from the model's.
class LengthMismatch : public Error {
public:
  LengthMismatch(std::size_t expected, std::size_t found)
      : Error("length mismatch: expected " + std::to_string(expected) +
              ", found " + std::to_string(found)),
        expected_(expected), found_(found) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t found() const noexcept { return found_; }

private:
  std::size_t expected_;
  std::size_t found_;
};

class ModelFileError : public Error {
public:
  enum class Kind { Io, Version, Truncated, Malformed, Invariant };

  ModelFileError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

class DatasetError : public Error {
public:
  enum class Kind { Io, Header, Dimension, Label, DuplicateId, Number, Empty };

  /// `line` is 1-based; 0 means the error is not tied to a line.
  DatasetError(Kind kind, std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

private:
  Kind kind_;
  std::size_t line_;
};

class PlanError : public Error {
public:
  using Error::Error;
};

class EvaluationError : public Error {
public:
  using Error::Error;
};

}  // namespace wisard

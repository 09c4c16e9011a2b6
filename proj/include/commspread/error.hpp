#pragma once

#include <stdexcept>
#include <string>

namespace commspread {

// Exit-code classes used by the CLI: usage (1), data (2), computation (3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (edge lists, partitions, configs).
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A measure or statistic that is mathematically undefined on its input.
class ComputationError : public Error {
 public:
  using Error::Error;
};

class MeasureUndefined : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace commspread

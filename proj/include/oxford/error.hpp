#pragma once

#include <stdexcept>
#include <string>

namespace oxford {

// Base for every error the library raises. The CLI maps subclasses onto exit
// codes through exit_code().
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 3; }
};

// A mathematically valid request with no answer (e.g. mean <= 1).
class DomainError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

// Malformed or out-of-range arguments.
class InputError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

class AttemptsExhausted : public Error {
public:
  AttemptsExhausted(const std::string& what, double acceptance_estimate)
      : Error(what), acceptance_estimate_(acceptance_estimate) {}
  int exit_code() const noexcept override { return 1; }
  double acceptance_estimate() const noexcept { return acceptance_estimate_; }

private:
  double acceptance_estimate_;
};

// Exhaustive enumeration requested above its cap.
class SizeError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int exit_code() const noexcept override { return 1; }
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class EmptyError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

class IoError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

}  // namespace oxford

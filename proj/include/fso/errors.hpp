#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fso {

// Base for every error raised by the library. Errors caused by bad input
// (files, documents, parameters) derive from InputError so callers can map
// them to a distinct exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t offset)
      : InputError("line " + std::to_string(line) + " (offset " + std::to_string(offset) +
                   "): " + message),
        line_(line),
        offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class CycleError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidParams : public InputError {
 public:
  using InputError::InputError;
};

class CorrespondenceMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownMember : public Error {
 public:
  using Error::Error;
};

class UnknownCommunity : public Error {
 public:
  using Error::Error;
};

class AlreadyDissolved : public Error {
 public:
  using Error::Error;
};

class NoAgentsLeft : public Error {
 public:
  using Error::Error;
};

}  // namespace fso

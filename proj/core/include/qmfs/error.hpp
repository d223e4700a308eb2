#pragma once

#include <stdexcept>
#include <string>

namespace qmfs {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the physical domain of the model (negative rate,
// empty grid, violated precondition).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two records that must be identical differ in a named field.
class MismatchError : public Error {
 public:
  MismatchError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qmfs

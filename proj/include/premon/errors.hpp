#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace premon {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text could not be parsed; `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A feature vector does not match the schema a model was built with.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// An incremental update was requested on a batch-only model.
class NotIncrementalError : public Error {
 public:
  using Error::Error;
};

}  // namespace premon

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subcart {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Syntax error in a polynomial or rational literal; position is a byte offset.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct NotMember : Error {
  using Error::Error;
};

// Raised when a frame is evaluated outside the region where its frozen pivot
// pattern is valid.
struct FrameEvaluationError : Error {
  using Error::Error;
};

// Malformed input file; field is a path such as "samplers[0].box[1]".
struct SchemaError : Error {
  SchemaError(std::string field_path, const std::string& what)
      : Error(field_path + ": " + what), field(std::move(field_path)) {}
  std::string field;
};

}  // namespace subcart

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biskt {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed formula text; position is a 0-based byte offset.
class ParseError : public Error {
public:
  ParseError(std::string const& what, std::size_t position)
      : Error("parse error at offset " + std::to_string(position) + ": " + what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Sizes of two relations / sets do not agree.
class SizeMismatch : public Error {
public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Malformed input file (JSON shape, unknown label, unknown rule, ...).
class InputError : public Error {
public:
  using Error::Error;
};

// Model construction failures.
class ModelError : public Error {
public:
  enum class Kind { EmptyUniverse, NotStable, NotHSet, BadLabel };

  ModelError(Kind kind, std::string const& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

} // namespace biskt

#pragma once

#include <stdexcept>
#include <string>

namespace orchard {

enum class Err {
  NonPrime,
  BadDegree,
  ReducibleModulus,
  ReducibleQuadratic,
  DivisionByZero,
  FieldMismatch,
  UnsupportedDegree,
  InfiniteField,
  CapExceeded,
  DimensionMismatch,
  NoCenterFound,
  InvalidCenter,
  OutOfRange,
  UnknownName,
  DegenerateColumn,
  DuplicateLine,
  SizeMismatch,
  NoFrame,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace orchard

#pragma once

#include <stdexcept>
#include <string>

namespace quadlat {

enum class ErrorKind {
  DegenerateLattice,
  ZeroVector,
  IndefiniteLattice,
  DefiniteLattice,
  CapExceeded,
  RankMismatch,
  OddLattice,
  NotTwoElementary,
  NotIsotropic,
  NotAnIsometry,
  OrderCapExceeded,
  NonIntegralReflection,
  NotUnimodular,
  DiscActionNontrivial,
  OddSquare,
  MissingU2,
  GramMismatch,
  UnsupportedType,
  UnknownName,
  NonIntegralDual,
  WrongSquare,
  NotPrimitive,
  InvalidArgument,
  ParseError,
  CheckFailed,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Parse failures carry the byte offset of the failure and what was expected.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& expected)
      : Error(ErrorKind::ParseError,
              "at offset " + std::to_string(offset) + ", expected " + expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace quadlat

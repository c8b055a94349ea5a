#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wreathlab {

enum class ErrorCode {
  DomainMismatch,
  InfiniteGroup,
  TrivialGroup,
  Overflow,
  BallCapExceeded,
  NotFoundWithin,
  IdentityNotFixed,
  SizeMismatch,
  ParseError,
  ArityError,
  UnknownName,
  InvalidArgument,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::BallCapExceeded: return "BallCapExceeded";
    case ErrorCode::NotFoundWithin: return "NotFoundWithin";
    case ErrorCode::IdentityNotFixed: return "IdentityNotFixed";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Resource errors (caps, search horizons) as opposed to bad input.
  bool is_resource_error() const noexcept {
    return code_ == ErrorCode::BallCapExceeded || code_ == ErrorCode::NotFoundWithin;
  }

 private:
  ErrorCode code_;
};

class BallCapExceeded : public Error {
 public:
  BallCapExceeded(std::size_t node_count, std::size_t node_cap)
      : Error(ErrorCode::BallCapExceeded,
              "ball reached " + std::to_string(node_count) + " nodes, cap is " +
                  std::to_string(node_cap)),
        node_count_(node_count) {}

  std::size_t node_count() const noexcept { return node_count_; }

 private:
  std::size_t node_count_;
};

class NotFoundWithin : public Error {
 public:
  explicit NotFoundWithin(int radius, const std::string& what = "element")
      : Error(ErrorCode::NotFoundWithin,
              what + " not found within radius " + std::to_string(radius)),
        radius_(radius) {}

  int radius() const noexcept { return radius_; }

 private:
  int radius_;
};

/// Position is a 1-based column into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected)
      : Error(ErrorCode::ParseError, describe(position, expected)),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string describe(std::size_t position, const std::vector<std::string>& expected) {
    std::string msg = "at offset " + std::to_string(position) + ", expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    return msg + "}";
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace wreathlab

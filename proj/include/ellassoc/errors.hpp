#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ellassoc {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a serialized object violates its schema; `where` is a JSON pointer.
class LoadError : public std::runtime_error {
 public:
  LoadError(std::string where, const std::string& what)
      : std::runtime_error(what + " at " + (where.empty() ? std::string("/") : where)),
        where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A computation reached a state its invariants rule out (e.g. an inconsistent linear system).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ellassoc

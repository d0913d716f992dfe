#pragma once

#include <stdexcept>
#include <string>

namespace bordcalc {

enum class ErrorKind {
  Parse,         // malformed input text or file
  Input,         // well-formed but unusable input (unknown label, bad JSON field)
  Resource,      // a configured cap was exceeded
  Precondition,  // operation called outside its domain
  Domain,        // mathematical condition violated (relator, non-cycle, ...)
  State,         // object in the wrong state for the operation
  Overflow,      // integer elimination overflowed 128 bits
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorKind::Parse, what + " at line " + std::to_string(line) + ", column " +
                                    std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace bordcalc

#pragma once

#include <stdexcept>
#include <string>

namespace stablematch {

enum class ErrorKind {
  Parse,        // malformed input text
  Validation,   // well-formed input violating a precondition
  CapExceeded,  // enumeration limit reached
  Infeasible,   // request has no answer (e.g. median of an even family)
  Io,           // file could not be read
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_validation(const std::string& what) {
  throw Error(ErrorKind::Validation, what);
}

[[noreturn]] inline void throw_parse(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

}  // namespace stablematch

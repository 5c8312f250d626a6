#pragma once

#include <stdexcept>
#include <string>

namespace lopsided {

// Every library error names the module it came from so the CLI can surface it.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class SignatureError : public Error {
 public:
  explicit SignatureError(const std::string& what) : Error("logic", what) {}
};

// A fact or verdict needed a decision that the evaluator could not reach at
// the configured fuel.
class UndecidedError : public Error {
 public:
  UndecidedError(std::string module, const std::string& what) : Error(std::move(module), what) {}
};

class CodeError : public Error {
 public:
  explicit CodeError(const std::string& what) : Error("borel", what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("dsl", std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lopsided

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperfol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        offset_(offset), line_(line), column_(column), message_(message) {}

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t offset_, line_, column_;
  std::string message_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name)
      : Error("unbound trace variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DuplicateVariable : public Error {
 public:
  explicit DuplicateVariable(std::string name)
      : Error("trace variable '" + name + "' quantified twice"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NotSyntacticallySafe : public Error {
 public:
  NotSyntacticallySafe() : Error("body is not in the syntactic safety fragment") {}
};

class EmptyLoop : public Error {
 public:
  EmptyLoop() : Error("lasso loop must be nonempty") {}
};

class EmptyTraceSet : public Error {
 public:
  EmptyTraceSet() : Error("trace set is empty") {}
};

class TooManyAtoms : public Error {
 public:
  explicit TooManyAtoms(std::size_t n)
      : Error("too many indexed atoms (" + std::to_string(n) + ", limit 64)") {}
};

/// Raised when an aligned lasso would exceed the position cap.
class LcmOverflow : public Error {
 public:
  LcmOverflow() : Error("aligned lasso exceeds 2^20 positions") {}
};

class SortError : public Error {
 public:
  SortError(std::string path, std::string expected, std::string found)
      : Error("sort error at " + path + ": expected " + expected + ", found " + found),
        path_(std::move(path)), expected_(std::move(expected)), found_(std::move(found)) {}
  const std::string& path() const { return path_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string path_, expected_, found_;
};

class UnboundFolVariable : public Error {
 public:
  explicit UnboundFolVariable(std::string name)
      : Error("unbound first-order variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class IntegerSortPresent : public Error {
 public:
  IntegerSortPresent() : Error("formula uses the Integer sort; not finitely evaluable") {}
};

class DomainEmpty : public Error {
 public:
  explicit DomainEmpty(const std::string& sort) : Error("empty domain for sort " + sort) {}
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

class NotAModel : public Error {
 public:
  NotAModel() : Error("trace set does not satisfy the formula") {}
};

class SolverNotFound : public Error {
 public:
  explicit SolverNotFound(std::string name)
      : Error("solver binary not found: " + name), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SoundnessConflict : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperfol

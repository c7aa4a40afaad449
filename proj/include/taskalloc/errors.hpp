#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace taskalloc {

// One machine-readable finding. `path` is a JSON-pointer-style location into
// the scenario document ("/sites/2/cost_rate"), empty when not applicable.
struct Issue {
  std::string code;
  std::string path;
  std::string message;

  bool operator==(const Issue&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Scenario or document content violates an invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

// An assignment is not total, references unknown ids, or breaks a pin.
class AssignmentError : public Error {
 public:
  AssignmentError(std::string code, std::string task, const std::string& message)
      : Error(std::move(code), message), task_(std::move(task)) {}
  const std::string& task() const noexcept { return task_; }

 private:
  std::string task_;
};

// A factor value needed for evaluation was never assessed.
class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& message) : Error("missing_assessment", message) {}
};

// The engine declines to run a request (e.g. enumeration space above the cap).
class RefusalError : public Error {
 public:
  RefusalError(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

// Malformed scenario document. line/column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::string code, const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(std::move(code), message), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace taskalloc

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdt {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Lexical or syntactic rejection of a model/query text. Always carries a
/// position and the token set the parser would have accepted there.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message,
             std::vector<std::string> expected = {})
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

/// Well-formed text that denotes an invalid model: unknown variable, duplicate
/// or missing table row, non-normalized row, cycle, size cap.
class SemanticError : public Error {
 public:
  explicit SemanticError(const std::string& message, int line = 0)
      : Error(line > 0 ? "semantic error at line " + std::to_string(line) + ": " + message
                       : "semantic error: " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Runtime evaluation failure on a valid model.
class EngineError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public EngineError {
 public:
  using EngineError::EngineError;
};

class DegenerateBeliefError : public EngineError {
 public:
  using EngineError::EngineError;
};

class CapError : public EngineError {
 public:
  using EngineError::EngineError;
};

class AmbiguityError : public EngineError {
 public:
  using EngineError::EngineError;
};

class RankArithmeticError : public EngineError {
 public:
  using EngineError::EngineError;
};

class InvalidPostRankingError : public EngineError {
 public:
  using EngineError::EngineError;
};

}  // namespace qdt

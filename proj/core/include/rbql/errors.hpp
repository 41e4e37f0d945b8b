#pragma once

#include <stdexcept>
#include <string>

namespace rbql {

/// Raised by decode_maze; carries the 1-based text position of the defect.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Raised when a recorded transition is re-recorded with a different
/// outcome. The environment is deterministic, so this always signals a bug.
class ModelInconsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace rbql

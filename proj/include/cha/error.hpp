#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cha {

// Operand dimensions disagree, or a constraint mentions a dimension outside
// the ambient space.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A caller broke an operation precondition that cannot be checked statically.
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

// Invalid analysis or transform configuration (unknown goal predicate,
// widening points that leave a cycle uncovered, ...).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace cha

#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace indiff::scenario {

class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// Arithmetic in one variable: + - * / ^, parentheses, numbers, pi, e and the functions
// sqrt, log, ln, exp, abs, tanh, sin, cos, pow, min, max.
class Expression {
 public:
  struct Node;

  // Throws ExpressionError on syntax errors and unknown names.
  Expression(const std::string& text, const std::string& variable);

  double operator()(double x) const;
  const std::string& text() const noexcept { return text_; }
  bool is_constant() const noexcept;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace indiff::scenario

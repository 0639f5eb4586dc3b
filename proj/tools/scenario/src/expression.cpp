#include "indiff/scenario/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace indiff::scenario {

struct Expression::Node {
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, call } kind;
  double value = 0.0;
  std::string name;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, std::vector<NodePtr> args = {}, double value = 0.0, std::string name = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->args = std::move(args);
  n->value = value;
  n->name = std::move(name);
  return n;
}

int arity(const std::string& f) {
  if (f == "pow" || f == "min" || f == "max") return 2;
  if (f == "sqrt" || f == "log" || f == "ln" || f == "exp" || f == "abs" || f == "tanh" ||
      f == "sin" || f == "cos")
    return 1;
  return -1;
}

class Parser {
 public:
  Parser(const std::string& s, const std::string& var) : s_(s), var_(var) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExpressionError("expression '" + s_ + "': " + msg + " at column " +
                              std::to_string(pos_ + 1),
                          pos_ + 1);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::add, {lhs, product()});
      } else if (accept('-')) {
        lhs = make(Kind::sub, {lhs, product()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::mul, {lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Kind::div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::negate, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  // right associative; binds tighter than unary minus on its left operand
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = sum();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Kind::number, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == var_) return make(Kind::variable);
      if (id == "pi") return make(Kind::number, {}, std::numbers::pi);
      if (id == "e") return make(Kind::number, {}, std::numbers::e);
      const int k = arity(id);
      if (k < 0) {
        pos_ = start;
        fail("unknown name '" + id + "'");
      }
      expect('(');
      std::vector<NodePtr> args{sum()};
      while (accept(',')) args.push_back(sum());
      expect(')');
      if (static_cast<int>(args.size()) != k) {
        pos_ = start;
        fail(id + " takes " + std::to_string(k) + " argument(s)");
      }
      return make(Kind::call, std::move(args), 0.0, id);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::string& var_;
  std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, double x) {
  switch (n.kind) {
    case Kind::number:
      return n.value;
    case Kind::variable:
      return x;
    case Kind::negate:
      return -eval(*n.args[0], x);
    case Kind::add:
      return eval(*n.args[0], x) + eval(*n.args[1], x);
    case Kind::sub:
      return eval(*n.args[0], x) - eval(*n.args[1], x);
    case Kind::mul:
      return eval(*n.args[0], x) * eval(*n.args[1], x);
    case Kind::div:
      return eval(*n.args[0], x) / eval(*n.args[1], x);
    case Kind::pow:
      return std::pow(eval(*n.args[0], x), eval(*n.args[1], x));
    case Kind::call:
      break;
  }
  const double u = eval(*n.args[0], x);
  const std::string& f = n.name;
  if (f == "sqrt") return std::sqrt(u);
  if (f == "log" || f == "ln") return std::log(u);
  if (f == "exp") return std::exp(u);
  if (f == "abs") return std::abs(u);
  if (f == "tanh") return std::tanh(u);
  if (f == "sin") return std::sin(u);
  if (f == "cos") return std::cos(u);
  const double v = eval(*n.args[1], x);
  if (f == "pow") return std::pow(u, v);
  if (f == "min") return std::min(u, v);
  return std::max(u, v);
}

bool constant(const Expression::Node& n) {
  if (n.kind == Kind::variable) return false;
  for (const auto& a : n.args)
    if (!constant(*a)) return false;
  return true;
}

}  // namespace

Expression::Expression(const std::string& text, const std::string& variable)
    : text_(text), root_(Parser(text_, variable).parse()) {}

double Expression::operator()(double x) const { return eval(*root_, x); }

bool Expression::is_constant() const noexcept { return constant(*root_); }

}  // namespace indiff::scenario

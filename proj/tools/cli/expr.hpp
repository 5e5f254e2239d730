#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace delaygraph::cli {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// f(x) over numbers, x, pi, e, + - * /, unary minus, parentheses, sin cos exp
class Expr {
 public:
  static Expr parse(const std::string& text);
  double operator()(double x) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace delaygraph::cli

#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace delaygraph::cli {

struct Expr::Node {
  char op = 0;  // 'n' number, 'x', '+', '-', '*', '/', '~' negate, 's' sin, 'c' cos, 'e' exp
  double value = 0.0;
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;

NodeP leaf(char op, double v = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = v;
  return n;
}

NodeP node(char op, std::vector<NodeP> kids) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->kids = std::move(kids);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodeP run() {
    NodeP e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ExprError("expression \"" + s_ + "\": " + what + " at position " + std::to_string(i_));
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  NodeP expr() {
    NodeP l = term();
    for (;;) {
      if (eat('+'))
        l = node('+', {l, term()});
      else if (eat('-'))
        l = node('-', {l, term()});
      else
        return l;
    }
  }

  NodeP term() {
    NodeP l = unary();
    for (;;) {
      if (eat('*'))
        l = node('*', {l, unary()});
      else if (eat('/'))
        l = node('/', {l, unary()});
      else
        return l;
    }
  }

  NodeP unary() {
    if (eat('-')) return node('~', {unary()});
    if (eat('+')) return unary();
    return primary();
  }

  NodeP primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      NodeP e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + i_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      i_ += static_cast<std::size_t>(end - begin);
      return leaf('n', v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j]))) ++j;
      const std::string id = s_.substr(i_, j - i_);
      i_ = j;
      if (id == "x") return leaf('x');
      if (id == "pi") return leaf('n', std::numbers::pi);
      if (id == "e") return leaf('n', std::numbers::e);
      char f = 0;
      if (id == "sin") f = 's';
      if (id == "cos") f = 'c';
      if (id == "exp") f = 'e';
      if (!f) fail("unknown name '" + id + "'");
      if (!eat('(')) fail("expected '(' after " + id);
      NodeP arg = expr();
      if (!eat(')')) fail("expected ')'");
      return node(f, {arg});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

double eval(const Expr::Node& n, double x) {
  switch (n.op) {
    case 'n': return n.value;
    case 'x': return x;
    case '+': return eval(*n.kids[0], x) + eval(*n.kids[1], x);
    case '-': return eval(*n.kids[0], x) - eval(*n.kids[1], x);
    case '*': return eval(*n.kids[0], x) * eval(*n.kids[1], x);
    case '/': return eval(*n.kids[0], x) / eval(*n.kids[1], x);
    case '~': return -eval(*n.kids[0], x);
    case 's': return std::sin(eval(*n.kids[0], x));
    case 'c': return std::cos(eval(*n.kids[0], x));
    case 'e': return std::exp(eval(*n.kids[0], x));
  }
  return NAN;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.text_ = text;
  e.root_ = Parser(text).run();
  return e;
}

double Expr::operator()(double x) const { return eval(*root_, x); }

}  // namespace delaygraph::cli

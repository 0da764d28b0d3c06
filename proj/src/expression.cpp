#include "ensemble_su2/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace ensemble_su2 {

namespace {

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
  throw std::runtime_error("expression parse error at position " + std::to_string(pos) + ": " + what);
}

}  // namespace

class expression_parser {
 public:
  explicit expression_parser(const std::string& text) : text_(text) {}

  expression run() {
    expression e;
    e.text_ = text_;
    skip_ws();
    if (at_end()) fail(pos_, "empty expression");
    parse_sum(e.code_);
    skip_ws();
    if (!at_end()) fail(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    return e;
  }

 private:
  using code = std::vector<expression::instr>;
  using op = expression::opcode;

  const std::string& text_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  struct depth_guard {
    expression_parser& p;
    explicit depth_guard(expression_parser& parser) : p(parser) {
      if (++p.depth_ > 60) fail(p.pos_, "expression too deeply nested");
    }
    ~depth_guard() { --p.depth_; }
  };

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void parse_sum(code& out) {
    parse_product(out);
    for (;;) {
      if (accept('+')) {
        parse_product(out);
        out.push_back({op::add});
      } else if (accept('-')) {
        parse_product(out);
        out.push_back({op::sub});
      } else {
        return;
      }
    }
  }

  void parse_product(code& out) {
    parse_factor(out);
    for (;;) {
      if (accept('*')) {
        parse_factor(out);
        out.push_back({op::mul});
      } else if (accept('/')) {
        parse_factor(out);
        out.push_back({op::div});
      } else {
        return;
      }
    }
  }

  void parse_factor(code& out) {
    depth_guard guard(*this);
    if (accept('-')) {
      parse_factor(out);
      out.push_back({op::neg});
      return;
    }
    parse_primary(out);
  }

  void parse_primary(code& out) {
    skip_ws();
    if (at_end()) fail(pos_, "expected value");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      parse_sum(out);
      if (!accept(')')) fail(pos_, "expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail(pos_, "bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      out.push_back({op::push_const, v});
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
      const std::string word = text_.substr(start, pos_ - start);
      if (word == "pi") {
        out.push_back({op::push_const, std::numbers::pi});
        return;
      }
      if (word == "omega") {
        out.push_back({op::push_omega});
        return;
      }
      op fn;
      if (word == "sin") fn = op::fn_sin;
      else if (word == "cos") fn = op::fn_cos;
      else if (word == "exp") fn = op::fn_exp;
      else if (word == "sqrt") fn = op::fn_sqrt;
      else fail(start, "unknown name '" + word + "'");
      if (!accept('(')) fail(pos_, "expected '(' after '" + word + "'");
      parse_sum(out);
      if (!accept(')')) fail(pos_, "expected ')'");
      out.push_back({fn});
      return;
    }
    fail(pos_, std::string("unexpected character '") + c + "'");
  }
};

expression expression::parse(const std::string& text) {
  return expression_parser(text).run();
}

double expression::eval(double omega) const {
  double stack[64];
  int top = -1;
  for (const instr& in : code_) {
    switch (in.op) {
      case opcode::push_const: stack[++top] = in.value; break;
      case opcode::push_omega: stack[++top] = omega; break;
      case opcode::add: --top; stack[top] += stack[top + 1]; break;
      case opcode::sub: --top; stack[top] -= stack[top + 1]; break;
      case opcode::mul: --top; stack[top] *= stack[top + 1]; break;
      case opcode::div: --top; stack[top] /= stack[top + 1]; break;
      case opcode::neg: stack[top] = -stack[top]; break;
      case opcode::fn_sin: stack[top] = std::sin(stack[top]); break;
      case opcode::fn_cos: stack[top] = std::cos(stack[top]); break;
      case opcode::fn_exp: stack[top] = std::exp(stack[top]); break;
      case opcode::fn_sqrt: stack[top] = std::sqrt(stack[top]); break;
    }
  }
  return stack[0];
}

}  // namespace ensemble_su2

#pragma once

#include <string>
#include <vector>

namespace ensemble_su2 {

// Arithmetic in one variable `omega`: numeric literals, `pi`, + - * /,
// unary minus, parentheses, sin/cos/exp/sqrt. Parsed once into a postfix
// program; evaluation is allocation-free.
class expression {
 public:
  expression() = default;

  static expression parse(const std::string& text);

  double eval(double omega) const;

  const std::string& text() const { return text_; }
  bool empty() const { return code_.empty(); }

 private:
  enum class opcode { push_const, push_omega, add, sub, mul, div, neg, fn_sin, fn_cos, fn_exp, fn_sqrt };
  struct instr {
    opcode op;
    double value = 0;
  };

  std::string text_;
  std::vector<instr> code_;

  friend class expression_parser;
};

}  // namespace ensemble_su2

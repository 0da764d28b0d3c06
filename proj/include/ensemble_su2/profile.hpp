#pragma once

#include <string>

#include "ensemble_su2/expression.hpp"

namespace ensemble_su2 {

double smooth_step_p(double x);
double smooth_transition_q(double x);

struct bump_params {
  double a = 0, b = 0, c = 0, d = 0;

  void validate() const;  // requires 0 < a < b < c < d
  bool operator==(const bump_params&) const = default;
};

// C^inf bump: 1 on [b, c], 0 off [a, d], values in [0, 1].
double bump_phi(double x, const bump_params& bp);

// Compactly supported target f(omega) = amplitude(omega) * Phi(omega) on
// [v0, v1] = [a, d], plus the induced even g with omega * g(2 omega) = f(omega).
class target_profile {
 public:
  target_profile() = default;
  target_profile(bump_params bp, const std::string& amplitude_text);

  double eval_f(double omega) const;
  double eval_g(double omega) const;  // even; 0 at omega = 0

  const bump_params& bump() const { return bump_; }
  const std::string& amplitude_text() const { return amplitude_.text(); }
  double v0() const { return bump_.a; }
  double v1() const { return bump_.d; }

  bool same_support(const target_profile& other) const { return bump_ == other.bump_; }

 private:
  bump_params bump_;
  expression amplitude_;
};

}  // namespace ensemble_su2

#include "ensemble_su2/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace ensemble_su2 {

double smooth_step_p(double x) {
  return x > 0 ? std::exp(-1.0 / x) : 0.0;
}

double smooth_transition_q(double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  const double px = smooth_step_p(x);
  return px / (px + smooth_step_p(1.0 - x));
}

void bump_params::validate() const {
  if (!(a > 0 && a < b && b < c && c < d) || !std::isfinite(d))
    throw std::invalid_argument("invalid bump parameters: require 0 < a < b < c < d");
}

double bump_phi(double x, const bump_params& bp) {
  return smooth_transition_q((x - bp.a) / (bp.b - bp.a)) *
         smooth_transition_q((bp.d - x) / (bp.d - bp.c));
}

target_profile::target_profile(bump_params bp, const std::string& amplitude_text)
    : bump_(bp), amplitude_(expression::parse(amplitude_text)) {
  bump_.validate();
}

double target_profile::eval_f(double omega) const {
  const double phi = bump_phi(omega, bump_);
  if (phi == 0.0) return 0.0;  // exactly zero off [a, d]
  const double amp = amplitude_.eval(omega);
  if (!std::isfinite(amp))
    throw std::invalid_argument("profile singular at omega=" + std::to_string(omega));
  return amp * phi;
}

double target_profile::eval_g(double omega) const {
  const double w = std::fabs(omega);  // evenness is exact by construction
  if (w == 0.0) return 0.0;
  return 2.0 * eval_f(0.5 * w) / w;
}

}  // namespace ensemble_su2

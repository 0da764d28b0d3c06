#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "ensemble_su2/profile.hpp"

namespace ensemble_su2 {

// Gauss-Legendre nodes/weights on [-1, 1].
struct gl_rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit gl_rule(int order);
};

// Composite fixed-order Gauss-Legendre with a panel-width cap; panels are
// traversed left to right, nodes in rule order, so the result is deterministic.
double gl_panel_integrate(const std::function<double(double)>& f, double lo, double hi,
                          double max_panel_width, const gl_rule& rule);

struct quadrature_spec {
  int order = 16;             // Gauss-Legendre nodes per panel
  double period_fraction = 8; // panels per oscillation period
  int min_panels = 8;         // minimum panel count across the g support

  static quadrature_spec coarse() { return {6, 2.0, 2}; }
};

struct decay_row {
  int n = 0;
  double c_n = 0;             // max over grid of |ghat(t)| t^n
  double top_to_bottom = 0;   // max over upper half-grid / max over lower half
  bool bounded = false;
};

struct decay_report {
  std::vector<decay_row> rows;
  bool all_bounded = false;
};

// ghat(t) = sqrt(2/pi) Int_{2 v0}^{2 v1} g(w) cos(t w) dw, cached per |t|.
class fourier_kernel {
 public:
  explicit fourier_kernel(target_profile profile, quadrature_spec spec = {});

  double ghat(double t) const;
  double operator()(double t) const { return ghat(t); }

  // |g(w) - (1/sqrt(2 pi)) Int_{-1/eps1}^{1/eps1} ghat(tau) cos(w tau) dtau|
  double truncation_error(double eps1, double w) const;

  // (1/sqrt(2 pi)) Int_{-1/eps1}^{1/eps1} ghat(tau) sin(w tau) dtau with a
  // node set mirrored about tau = 0; vanishes by symmetry, not accuracy.
  double odd_integral(double eps1, double w) const;

  decay_report verify_decay(int n_max, const std::vector<double>& t_grid) const;

  const target_profile& profile() const { return profile_; }
  const quadrature_spec& spec() const { return spec_; }
  std::size_t cache_size() const;

 private:
  double compute_ghat(double t) const;
  double outer_panel_width(double w) const;

  target_profile profile_;
  quadrature_spec spec_;
  gl_rule rule_;
  mutable std::map<double, double> cache_;
  mutable std::mutex cache_mutex_;
};

}  // namespace ensemble_su2

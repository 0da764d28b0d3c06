#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ensemble_su2/fourier.hpp"
#include "ensemble_su2/profile.hpp"

namespace ensemble_su2 {

enum class target_axis { x, y };

struct ghat_window {
  double center = 0;  // window is ghat(t - center), truncated to the segment pair
  double scale = 0;   // 1 / (2 N sqrt(2 pi))
};

// One piece of the control law. `square` holds the +-1 square-wave channel and
// `window` the kernel channel; which of (u, v) each one feeds depends on the
// schedule axis (y-target: u = square, v = window; x-target: swapped roles).
struct control_segment {
  double t0 = 0;
  double t1 = 0;
  int square = 0;
  std::optional<ghat_window> window;
};

struct control_schedule {
  double eps1 = 0;
  int n_pairs = 0;  // N
  target_axis axis = target_axis::y;
  target_profile profile;
  std::vector<control_segment> segments;
  double total_duration = 0;

  double eps2() const { return 1.0 / (2.0 * n_pairs); }
  fourier_kernel make_kernel(quadrature_spec spec = {}) const { return fourier_kernel(profile, spec); }
};

control_schedule build_theorem1(const target_profile& profile, double eps1, int n_pairs,
                                target_axis axis);

struct control_values {
  double u = 0;
  double v = 0;
};

// Right-continuous lookup; throws "time out of schedule" outside [0, total].
control_values eval_controls(const control_schedule& sched, const fourier_kernel& kernel, double t);

// Index of the segment owning time t under the right-continuous convention.
std::size_t segment_index(const control_schedule& sched, double t);

// Three schedules executed back to back to realize
// exp(-i alpha sx) exp(-i beta sy) exp(-i gamma sx): run order is
// x-target(gamma), then y-target(beta), then x-target(alpha).
std::array<control_schedule, 3> euler_compose(const target_profile& prof_alpha,
                                              const target_profile& prof_beta,
                                              const target_profile& prof_gamma, double eps1,
                                              int n_pairs);

}  // namespace ensemble_su2

#include "ensemble_su2/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ensemble_su2 {

control_schedule build_theorem1(const target_profile& profile, double eps1, int n_pairs,
                                target_axis axis) {
  if (!(eps1 > 0) || !std::isfinite(eps1) || n_pairs < 1)
    throw std::invalid_argument("bad synthesis parameters: require eps1 > 0 and N >= 1");
  control_schedule sched;
  sched.eps1 = eps1;
  sched.n_pairs = n_pairs;
  sched.axis = axis;
  sched.profile = profile;
  auto tick = [&](int k) { return static_cast<double>(k) / eps1; };
  const double scale = 1.0 / (2.0 * n_pairs * std::sqrt(2.0 * std::numbers::pi));
  sched.segments.push_back({tick(0), tick(1), -1, std::nullopt});
  for (int m = 0; m < n_pairs; ++m) {
    sched.segments.push_back({tick(4 * m + 1), tick(4 * m + 3), +1, ghat_window{tick(4 * m + 2), scale}});
    sched.segments.push_back({tick(4 * m + 3), tick(4 * m + 5), -1, ghat_window{tick(4 * m + 4), scale}});
  }
  sched.segments.push_back({tick(4 * n_pairs + 1), tick(4 * n_pairs + 2), +1, std::nullopt});
  sched.total_duration = tick(4 * n_pairs + 2);
  return sched;
}

std::size_t segment_index(const control_schedule& sched, double t) {
  if (!(t >= 0) || !(t <= sched.total_duration) || sched.segments.empty())
    throw std::invalid_argument("time out of schedule");
  // right-continuous: last segment whose t0 <= t
  auto it = std::upper_bound(sched.segments.begin(), sched.segments.end(), t,
                             [](double value, const control_segment& s) { return value < s.t0; });
  return static_cast<std::size_t>(std::distance(sched.segments.begin(), it) - 1);
}

control_values eval_controls(const control_schedule& sched, const fourier_kernel& kernel,
                             double t) {
  const control_segment& seg = sched.segments[segment_index(sched, t)];
  const double square = seg.square;
  const double window = seg.window ? seg.window->scale * kernel.ghat(t - seg.window->center) : 0.0;
  if (sched.axis == target_axis::y) return {square, window};
  return {window, square};  // axis swap per the x-target variant
}

std::array<control_schedule, 3> euler_compose(const target_profile& prof_alpha,
                                              const target_profile& prof_beta,
                                              const target_profile& prof_gamma, double eps1,
                                              int n_pairs) {
  if (!prof_alpha.same_support(prof_beta) || !prof_alpha.same_support(prof_gamma))
    throw std::invalid_argument("incompatible profiles: bump supports must match");
  // propagators left-multiply, so gamma runs first
  return {build_theorem1(prof_gamma, eps1, n_pairs, target_axis::x),
          build_theorem1(prof_beta, eps1, n_pairs, target_axis::y),
          build_theorem1(prof_alpha, eps1, n_pairs, target_axis::x)};
}

}  // namespace ensemble_su2

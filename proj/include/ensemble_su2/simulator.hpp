#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ensemble_su2/schedule.hpp"
#include "ensemble_su2/su2.hpp"

namespace ensemble_su2 {

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct sim_config {
  std::vector<double> omega_grid;
  double dt_max = 0;      // <= 0 selects default_dt(sched)
  long record_stride = 1; // store every k-th step (t = 0 and the final step always kept)
};

struct trajectory {
  double omega = 0;
  std::vector<double> times;
  std::vector<unitary2> states;
};

struct ensemble_entry {
  trajectory lab;
  trajectory framed;
  std::vector<double> population;      // P(omega, t) = |<e2, Xhat e1>|^2
  std::vector<double> population_ref;  // sin^2(r(t) f(omega))
  double final_frob = 0;
  double final_infidelity = 0;
};

struct ensemble_result {
  std::vector<ensemble_entry> entries;
  double max_unitarity_drift = 0;
};

// min(0.01, 1/(100 v1), shortest segment / 4)
double default_dt(const control_schedule& sched);

// Exponential midpoint integrator for i dX/dt = omega (u sx + v sy) X; steps
// never cross segment joins and every step is exactly unitary.
trajectory propagate(const control_schedule& sched, const fourier_kernel& kernel, double omega,
                     const sim_config& cfg);

// Closed-form Int_0^t of the square-wave channel from segment bookkeeping.
double square_channel_integral(const control_schedule& sched, double t);

// Xhat = exp(+i (Int square) omega sigma_axis) X; the conjugation axis is the
// square-wave channel's axis (sx for y-target, sy for x-target).
trajectory frame_transform(const trajectory& traj, const control_schedule& sched);

// staircase r(t) = m / (2N), m = floor(t eps1 / 2), clamped to [0, 1]
double reference_r(const control_schedule& sched, double t);

unitary2 axis_target(const target_profile& profile, double omega, target_axis axis);

std::pair<std::vector<double>, std::vector<double>> populations(const trajectory& framed,
                                                                const control_schedule& sched);

double max_unitarity_drift(const trajectory& traj);

// Per-omega results are independent of the worker count and evaluation order;
// workers <= 0 selects hardware concurrency.
ensemble_result ensemble_propagate(const control_schedule& sched, const fourier_kernel& kernel,
                                   const sim_config& cfg, int workers = 1);

}  // namespace ensemble_su2

#pragma once

#include <vector>

#include "ensemble_su2/fourier.hpp"
#include "ensemble_su2/simulator.hpp"

namespace ensemble_su2 {

struct auxiliary_config {
  double eps1 = 0;
  double eps2 = 0;
  int nu = +1;  // sign of the square-wave channel in the frame-identity check
};

struct error_metrics {
  double frob = 0;
  double infidelity = 0;
};

error_metrics target_error(const unitary2& final_state, const target_profile& profile,
                           double omega, target_axis axis);

// i dXhat/dt = omega v(t) (sin(2 omega t) sz + cos(2 omega t) sy) Xhat on
// [-1/eps1, 1/eps1], Xhat(-1/eps1) = I, v = (eps2/sqrt(2 pi)) ghat(t).
unitary2 auxiliary_propagate(const auxiliary_config& cfg, const fourier_kernel& kernel,
                             double omega, double dt);

// Least-squares slope of log(y) against log(x).
double fit_log_order(const std::vector<double>& x, const std::vector<double>& y);

struct lemma4_row {
  double eps2 = 0;
  double max_err = 0;  // max over omega of |Xhat - exp(-i eps2 omega g(2 omega) sy)|
};

struct lemma4_report {
  std::vector<lemma4_row> rows;
  double order = 0;  // empirical order in eps2
  bool pass = false; // order >= 1.9
};

lemma4_report lemma4_scaling_test(const fourier_kernel& kernel, double eps1,
                                  const std::vector<double>& eps2_list,
                                  const std::vector<double>& omega_grid, double dt = 0.0025);

// Frame identity between the lab evolution with u = nu, v = (eps2/sqrt(2 pi))
// ghat(t - T) on [0, 2T] and the auxiliary propagator, T = 1/eps1:
//   nu = +1: X(2T) = exp(-i omega T sx) conj(Xhat(omega, T)) exp(-i omega T sx)
//   nu = -1: X(2T) = exp(+i omega T sx)      Xhat(omega, T)  exp(+i omega T sx)
// Returns the Frobenius distance between the two independently simulated sides.
double lemma5_frame_check(const fourier_kernel& kernel, double eps1, double eps2, int nu,
                          double omega, double dt);

struct sweep_row {
  double eps1 = 0;
  int n_pairs = 0;
  double max_frob_err = 0;
  double max_infidelity = 0;
  double runtime_s = 0;
};

struct sweep_report {
  std::vector<sweep_row> rows;
};

sweep_report theorem1_sweep(const target_profile& profile, const std::vector<double>& eps1_list,
                            const std::vector<int>& n_list, const std::vector<double>& omega_grid,
                            double dt = 0, int workers = 1, target_axis axis = target_axis::y);

// 33 Chebyshev-spaced points in [v0 + margin, v1 - margin], margin =
// (v1 - v0)/20, merged with {0.5, 0.7, 0.9} when inside the support.
std::vector<double> default_omega_grid(const target_profile& profile);

}  // namespace ensemble_su2

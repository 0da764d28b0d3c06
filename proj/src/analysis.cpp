#include "ensemble_su2/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace ensemble_su2 {

namespace {
constexpr double pi = std::numbers::pi;
}

error_metrics target_error(const unitary2& final_state, const target_profile& profile,
                           double omega, target_axis axis) {
  const unitary2 target = axis_target(profile, omega, axis);
  return {frobenius_distance(final_state, target), 1.0 - trace_fidelity(final_state, target)};
}

unitary2 auxiliary_propagate(const auxiliary_config& cfg, const fourier_kernel& kernel,
                             double omega, double dt) {
  if (!(cfg.eps1 > 0) || cfg.eps2 < 0) throw std::invalid_argument("bad auxiliary parameters");
  const double aw = std::fabs(omega);
  if (!(aw >= kernel.profile().v0() && aw <= kernel.profile().v1()))
    throw std::invalid_argument("auxiliary omega outside +-[v0, v1]");
  const double T = 1.0 / cfg.eps1;
  const long n = std::max<long>(1, static_cast<long>(std::ceil(2.0 * T / dt)));
  const double h = 2.0 * T / n;
  const double amp = cfg.eps2 / std::sqrt(2.0 * pi);
  unitary2 x = unitary2::Identity();
  for (long k = 0; k < n; ++k) {
    const double tm = -T + (k + 0.5) * h;
    const double v = amp * kernel.ghat(tm);
    const double phase = 2.0 * omega * tm;
    x = pauli_exp(0.0, h * omega * v * std::cos(phase), h * omega * v * std::sin(phase)) * x;
  }
  return x;
}

double fit_log_order(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("order fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

lemma4_report lemma4_scaling_test(const fourier_kernel& kernel, double eps1,
                                  const std::vector<double>& eps2_list,
                                  const std::vector<double>& omega_grid, double dt) {
  lemma4_report report;
  std::vector<double> xs, ys;
  for (double eps2 : eps2_list) {
    lemma4_row row;
    row.eps2 = eps2;
    for (double w : omega_grid) {
      const unitary2 xhat = auxiliary_propagate({eps1, eps2}, kernel, w, dt);
      const unitary2 target = pauli_exp(0.0, eps2 * w * kernel.profile().eval_g(2.0 * w), 0.0);
      row.max_err = std::max(row.max_err, frobenius_distance(xhat, target));
    }
    report.rows.push_back(row);
    if (eps2 > 0 && row.max_err > 0) {
      xs.push_back(eps2);
      ys.push_back(row.max_err);
    }
  }
  report.order = xs.size() >= 2 ? fit_log_order(xs, ys) : 0.0;
  report.pass = report.order >= 1.9;
  return report;
}

double lemma5_frame_check(const fourier_kernel& kernel, double eps1, double eps2, int nu,
                          double omega, double dt) {
  if (nu != 1 && nu != -1) throw std::invalid_argument("nu must be +-1");
  if (!(omega >= kernel.profile().v0() && omega <= kernel.profile().v1()))
    throw std::invalid_argument("omega outside [v0, v1]");
  const double T = 1.0 / eps1;

  // lab side on [0, 2T]: u = nu, v = (eps2/sqrt(2 pi)) ghat(t - T)
  const long n = std::max<long>(1, static_cast<long>(std::ceil(2.0 * T / dt)));
  const double h = 2.0 * T / n;
  const double amp = eps2 / std::sqrt(2.0 * pi);
  unitary2 lab = unitary2::Identity();
  for (long k = 0; k < n; ++k) {
    const double tm = (k + 0.5) * h;
    const double v = amp * kernel.ghat(tm - T);
    lab = pauli_exp(h * omega * nu, h * omega * v, 0.0) * lab;
  }

  const unitary2 xhat = auxiliary_propagate({eps1, eps2, nu}, kernel, omega, dt);
  const unitary2 core = nu > 0 ? xhat.conjugate().eval() : xhat;
  const unitary2 r = pauli_exp(nu * omega * T, 0.0, 0.0);
  return frobenius_distance(lab, r * core * r);
}

sweep_report theorem1_sweep(const target_profile& profile, const std::vector<double>& eps1_list,
                            const std::vector<int>& n_list, const std::vector<double>& omega_grid,
                            double dt, int workers, target_axis axis) {
  if (eps1_list.empty() || n_list.empty() || omega_grid.empty())
    throw std::invalid_argument("sweep needs non-empty eps1, N, and omega lists");
  const fourier_kernel kernel(profile);  // shared ghat cache across all cells
  sweep_report report;
  for (double eps1 : eps1_list) {
    for (int n_pairs : n_list) {
      const auto start = std::chrono::steady_clock::now();
      const control_schedule sched = build_theorem1(profile, eps1, n_pairs, axis);
      sim_config cfg;
      cfg.omega_grid = omega_grid;
      cfg.dt_max = dt;
      cfg.record_stride = std::numeric_limits<long>::max();  // finals only
      const ensemble_result res = ensemble_propagate(sched, kernel, cfg, workers);
      sweep_row row;
      row.eps1 = eps1;
      row.n_pairs = n_pairs;
      for (const ensemble_entry& e : res.entries) {
        row.max_frob_err = std::max(row.max_frob_err, e.final_frob);
        row.max_infidelity = std::max(row.max_infidelity, e.final_infidelity);
      }
      row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report.rows.push_back(row);
    }
  }
  return report;
}

std::vector<double> default_omega_grid(const target_profile& profile) {
  const double v0 = profile.v0(), v1 = profile.v1();
  const double margin = (v1 - v0) / 20.0;
  const double lo = v0 + margin, hi = v1 - margin;
  std::set<double> grid;
  constexpr int n = 33;
  for (int j = 0; j < n; ++j)
    grid.insert(0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(pi * (2 * j + 1) / (2.0 * n)));
  for (double w : {0.5, 0.7, 0.9})
    if (w >= v0 && w <= v1) grid.insert(w);
  return {grid.begin(), grid.end()};
}

}  // namespace ensemble_su2

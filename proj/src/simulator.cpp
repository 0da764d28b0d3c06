#include "ensemble_su2/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ensemble_su2 {

namespace {

void validate(const control_schedule& sched, const sim_config& cfg) {
  if (sched.segments.empty()) throw std::invalid_argument("empty schedule");
  if (cfg.omega_grid.empty()) throw std::invalid_argument("bad simulation config: empty omega grid");
  for (double w : cfg.omega_grid)
    if (!(w > 0) || !std::isfinite(w))
      throw std::invalid_argument("bad simulation config: omega values must be positive");
  if (cfg.record_stride < 1) throw std::invalid_argument("bad simulation config: stride must be >= 1");
}

}  // namespace

double default_dt(const control_schedule& sched) {
  double min_len = sched.total_duration;
  for (const control_segment& s : sched.segments) min_len = std::min(min_len, s.t1 - s.t0);
  return std::min({0.01, 1.0 / (100.0 * sched.profile.v1()), 0.25 * min_len});
}

trajectory propagate(const control_schedule& sched, const fourier_kernel& kernel, double omega,
                     const sim_config& cfg) {
  if (!(omega > 0)) throw std::invalid_argument("omega must be positive");
  const double dt = cfg.dt_max > 0 ? cfg.dt_max : default_dt(sched);
  trajectory traj;
  traj.omega = omega;
  unitary2 x = unitary2::Identity();
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  long step = 0;
  for (std::size_t si = 0; si < sched.segments.size(); ++si) {
    const control_segment& seg = sched.segments[si];
    const double len = seg.t1 - seg.t0;
    const long n = std::max<long>(1, static_cast<long>(std::ceil(len / dt)));
    const double h = len / n;
    const bool last_segment = si + 1 == sched.segments.size();
    for (long k = 0; k < n; ++k) {
      const double tm = seg.t0 + (k + 0.5) * h;
      const double square = seg.square;
      const double window = seg.window ? seg.window->scale * kernel.ghat(tm - seg.window->center) : 0.0;
      const double u = sched.axis == target_axis::y ? square : window;
      const double v = sched.axis == target_axis::y ? window : square;
      x = pauli_exp(h * omega * u, h * omega * v, 0.0) * x;
      ++step;
      const bool last_step = last_segment && k + 1 == n;
      if (step % cfg.record_stride == 0 || last_step) {
        traj.times.push_back(last_step ? sched.total_duration : seg.t0 + (k + 1) * h);
        traj.states.push_back(x);
      }
    }
  }
  return traj;
}

double square_channel_integral(const control_schedule& sched, double t) {
  const std::size_t idx = segment_index(sched, t);
  double acc = 0.0;
  for (std::size_t k = 0; k < idx; ++k)
    acc += sched.segments[k].square * (sched.segments[k].t1 - sched.segments[k].t0);
  return acc + sched.segments[idx].square * (t - sched.segments[idx].t0);
}

trajectory frame_transform(const trajectory& traj, const control_schedule& sched) {
  trajectory out;
  out.omega = traj.omega;
  out.times = traj.times;
  out.states.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double angle = traj.omega * square_channel_integral(sched, traj.times[i]);
    // exp(+i angle sigma) = pauli_exp(-angle on that axis)
    const unitary2 frame = sched.axis == target_axis::y ? pauli_exp(-angle, 0.0, 0.0)
                                                        : pauli_exp(0.0, -angle, 0.0);
    out.states.push_back(frame * traj.states[i]);
  }
  return out;
}

double reference_r(const control_schedule& sched, double t) {
  const double m = std::floor(t * sched.eps1 / 2.0);
  return std::clamp(m * sched.eps2(), 0.0, 1.0);
}

unitary2 axis_target(const target_profile& profile, double omega, target_axis axis) {
  const double f = profile.eval_f(omega);
  return axis == target_axis::y ? pauli_exp(0.0, f, 0.0) : pauli_exp(f, 0.0, 0.0);
}

std::pair<std::vector<double>, std::vector<double>> populations(const trajectory& framed,
                                                                const control_schedule& sched) {
  const double f = sched.profile.eval_f(framed.omega);
  std::vector<double> p(framed.states.size()), p_ref(framed.states.size());
  for (std::size_t i = 0; i < framed.states.size(); ++i) {
    p[i] = std::norm(framed.states[i](1, 0));
    const double s = std::sin(reference_r(sched, framed.times[i]) * f);
    p_ref[i] = s * s;
  }
  return {std::move(p), std::move(p_ref)};
}

double max_unitarity_drift(const trajectory& traj) {
  double drift = 0.0;
  for (const unitary2& x : traj.states)
    drift = std::max(drift, frobenius_distance(x.adjoint() * x, unitary2::Identity()));
  return drift;
}

ensemble_result ensemble_propagate(const control_schedule& sched, const fourier_kernel& kernel,
                                   const sim_config& cfg, int workers) {
  validate(sched, cfg);
  const std::size_t n = cfg.omega_grid.size();
  ensemble_result result;
  result.entries.resize(n);
  std::vector<double> drifts(n, 0.0);

  auto run_one = [&](std::size_t i) {
    ensemble_entry& e = result.entries[i];
    const double omega = cfg.omega_grid[i];
    e.lab = propagate(sched, kernel, omega, cfg);
    e.framed = frame_transform(e.lab, sched);
    std::tie(e.population, e.population_ref) = populations(e.framed, sched);
    const unitary2 target = axis_target(sched.profile, omega, sched.axis);
    e.final_frob = frobenius_distance(e.lab.states.back(), target);
    e.final_infidelity = 1.0 - trace_fidelity(e.lab.states.back(), target);
    drifts[i] = max_unitarity_drift(e.lab);
  };

  int pool = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::clamp<int>(pool, 1, static_cast<int>(n));
  if (pool == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (int w = 0; w < pool; ++w)
      threads.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_one(i);
      });
    for (std::thread& th : threads) th.join();
  }

  for (double d : drifts) result.max_unitarity_drift = std::max(result.max_unitarity_drift, d);
  if (result.max_unitarity_drift > 1e-8)
    throw numeric_error("integrator failure: unitarity drift " +
                        std::to_string(result.max_unitarity_drift));
  return result;
}

}  // namespace ensemble_su2
